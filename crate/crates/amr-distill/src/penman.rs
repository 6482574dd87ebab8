//! Parsing and serialization of sentence-level semantic graphs in PENMAN
//! notation, the parenthesized text form emitted by AMR parsers:
//!
//! ```text
//! (w / want-01
//!    :ARG0 (b / boy)
//!    :ARG1 (g / go-02 :ARG0 b))
//! ```
//!
//! A graph is a set of concept nodes (variable + label) connected by role
//! relations. A variable that appears more than once is a re-entrancy: the
//! later mentions reference the existing node instead of introducing a new
//! one. Role targets that are not variables are attribute constants (numbers,
//! bare symbols, or quoted literals such as `:op1 "New York"`).
//!
//! The parser accepts AMR 3.0-style graphs, skips `#` metadata lines, and
//! tolerates ISI alignment markers (`~e.5,6` suffixes); markers on concept
//! labels are recorded as token indices, markers on roles and constants are
//! stripped and discarded. Serialization is deterministic and single-line so
//! that golden-file comparisons are byte-stable.

use thiserror::Error;

/// Errors produced while parsing or querying a graph.
#[derive(Debug, Error, PartialEq)]
pub enum PenmanError {
    /// Input contained no expression after comment/whitespace stripping.
    #[error("empty input: no graph expression found")]
    EmptyInput,
    /// Parenthesis imbalance detected at the given byte offset.
    #[error("unbalanced parentheses at byte {0}")]
    UnbalancedParens(usize),
    /// The same variable introduced two different nodes.
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    /// A variable-shaped token references a node that is never defined.
    #[error("dangling reference to undefined variable `{0}`")]
    DanglingReference(String),
    /// A lookup named a variable that is not part of the graph.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    /// A node is not reachable from the root, so it cannot be serialized.
    #[error("node `{0}` is unreachable from the root")]
    UnreachableNode(String),
    /// Generic syntax error: something else stood where `expected` belongs.
    #[error("expected {expected} at byte {position}")]
    Unexpected {
        expected: &'static str,
        position: usize,
    },
    /// A quoted literal was opened but never closed.
    #[error("unterminated quoted literal starting at byte {0}")]
    UnterminatedString(usize),
}

/// Broad classification of a concept node, derived from its label and the
/// role that introduced it. `Predicate` labels carry a sense suffix
/// (`want-01`), `Special` covers reserved frames such as `date-entity`,
/// `Modifier` marks nodes introduced under `:mod`/`:manner`/`:degree`, and
/// everything else is an `Entity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Predicate,
    Entity,
    Modifier,
    Special,
}

/// A concept node: a variable bound to a lemma-like label, e.g. `b / boy`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptNode {
    pub variable: String,
    pub label: String,
    pub node_kind: NodeKind,
    /// Token indices recovered from an ISI alignment marker on the label
    /// (`establish-01~e.3,4` → `[3, 4]`); empty when the label carried none.
    pub alignment: Vec<u32>,
}

/// An attribute constant: the non-node targets a role can point at.
#[derive(Debug, Clone, PartialEq)]
pub enum Constant {
    /// Bare symbol such as `-` (polarity) or `imperative`.
    Symbol(String),
    /// Unquoted integer such as `:month 7`.
    Integer(i64),
    /// Quoted literal; interior text is preserved exactly.
    Quoted(String),
}

impl std::fmt::Display for Constant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Constant::Symbol(s) => write!(f, "{s}"),
            Constant::Integer(i) => write!(f, "{i}"),
            Constant::Quoted(s) => write!(f, "\"{s}\""),
        }
    }
}

/// Target of a relation: either another concept node or a constant.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// Edge to the node bound to this variable.
    Node(String),
    /// Attribute value.
    Constant(Constant),
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Node(variable) => write!(f, "{variable}"),
            Target::Constant(constant) => write!(f, "{constant}"),
        }
    }
}

/// A labelled edge or attribute, in document order.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub source: String,
    /// Role string including the leading `:`, e.g. `:ARG0`, `:month`.
    pub role: String,
    pub target: Target,
}

impl Relation {
    /// True when the target is an attribute constant rather than a node.
    pub fn is_attribute(&self) -> bool {
        matches!(self.target, Target::Constant(_))
    }
}

/// A rooted semantic graph. Nodes are stored in first-appearance order;
/// relations preserve document order. `source_sentence_index` records which
/// sentence of a document the graph came from (0 when standalone).
///
/// Equality is structural: same root, same relation sequence, and the same
/// set of nodes. Node order and `source_sentence_index` are presentation
/// metadata and do not participate.
///
/// `serialize` always emits first-mention form — every variable is defined
/// at its first occurrence — and `parse(serialize(g)) == g` holds for every
/// graph parsed from such text. Text that references a variable before its
/// definition still parses; if the forward-referenced node carries outgoing
/// relations of its own, re-serialization moves its definition (and with it
/// those relations' document positions) to the first mention, so the round
/// trip converges to first-mention form after one pass rather than being an
/// immediate identity.
#[derive(Debug, Clone)]
pub struct AmrGraph {
    root: String,
    nodes: Vec<ConceptNode>,
    relations: Vec<Relation>,
    pub source_sentence_index: usize,
}

impl PartialEq for AmrGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.root != other.root || self.relations != other.relations {
            return false;
        }
        if self.nodes.len() != other.nodes.len() {
            return false;
        }
        let mut a: Vec<&ConceptNode> = self.nodes.iter().collect();
        let mut b: Vec<&ConceptNode> = other.nodes.iter().collect();
        a.sort_by(|x, y| x.variable.cmp(&y.variable));
        b.sort_by(|x, y| x.variable.cmp(&y.variable));
        a == b
    }
}

impl AmrGraph {
    /// Builds a graph from parts, validating every invariant: unique
    /// variables, a defined root, defined relation endpoints, and
    /// reachability of every node from the root (required for
    /// serializability).
    pub fn new(
        root: impl Into<String>,
        nodes: Vec<ConceptNode>,
        relations: Vec<Relation>,
    ) -> Result<Self, PenmanError> {
        let graph = AmrGraph {
            root: root.into(),
            nodes,
            relations,
            source_sentence_index: 0,
        };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<(), PenmanError> {
        let mut seen = std::collections::HashSet::new();
        for node in &self.nodes {
            if !seen.insert(node.variable.as_str()) {
                return Err(PenmanError::DuplicateVariable(node.variable.clone()));
            }
        }
        if !seen.contains(self.root.as_str()) {
            return Err(PenmanError::UnknownVariable(self.root.clone()));
        }
        for rel in &self.relations {
            if !seen.contains(rel.source.as_str()) {
                return Err(PenmanError::DanglingReference(rel.source.clone()));
            }
            if let Target::Node(v) = &rel.target {
                if !seen.contains(v.as_str()) {
                    return Err(PenmanError::DanglingReference(v.clone()));
                }
            }
        }
        // Reachability from the root guarantees serializability.
        let mut reached = std::collections::HashSet::new();
        let mut stack = vec![self.root.as_str()];
        while let Some(v) = stack.pop() {
            if !reached.insert(v) {
                continue;
            }
            for rel in self.relations.iter().filter(|r| r.source == v) {
                if let Target::Node(t) = &rel.target {
                    stack.push(t.as_str());
                }
            }
        }
        for node in &self.nodes {
            if !reached.contains(node.variable.as_str()) {
                return Err(PenmanError::UnreachableNode(node.variable.clone()));
            }
        }
        Ok(())
    }

    /// Parses a single PENMAN expression. Lines whose first non-blank
    /// character is `#` are metadata and skipped before parsing.
    pub fn parse(text: &str) -> Result<Self, PenmanError> {
        let cleaned: String = text
            .lines()
            .filter(|line| !line.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        Parser::new(&cleaned).parse_graph()
    }

    /// The root variable.
    pub fn root(&self) -> &str {
        &self.root
    }

    /// All concept nodes in first-appearance order. Attribute constants are
    /// never part of the result.
    pub fn concept_nodes(&self) -> &[ConceptNode] {
        &self.nodes
    }

    /// All relations in document order.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Looks up a node by variable.
    pub fn node(&self, variable: &str) -> Option<&ConceptNode> {
        self.nodes.iter().find(|n| n.variable == variable)
    }

    /// All attribute relations whose source is `variable`, in document
    /// order, as `(role, constant)` pairs.
    pub fn attributes_of(&self, variable: &str) -> Result<Vec<(&str, &Constant)>, PenmanError> {
        if self.node(variable).is_none() {
            return Err(PenmanError::UnknownVariable(variable.to_string()));
        }
        Ok(self
            .relations
            .iter()
            .filter(|r| r.source == variable)
            .filter_map(|r| match &r.target {
                Target::Constant(c) => Some((r.role.as_str(), c)),
                Target::Node(_) => None,
            })
            .collect())
    }

    /// Serializes to a deterministic single-line PENMAN string. Each node is
    /// expanded at its first encounter in a pre-order walk; later mentions
    /// emit only the variable. `parse(serialize(g))` is structurally equal
    /// to `g`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut expanded = std::collections::HashSet::new();
        expanded.insert(self.root.as_str());
        self.write_node(&mut out, &self.root, &mut expanded);
        out
    }

    fn write_node<'a>(
        &'a self,
        out: &mut String,
        variable: &str,
        expanded: &mut std::collections::HashSet<&'a str>,
    ) {
        let node = self.node(variable).expect("validated graph");
        out.push('(');
        out.push_str(&node.variable);
        out.push_str(" / ");
        out.push_str(&node.label);
        if !node.alignment.is_empty() {
            out.push_str("~e.");
            let indices: Vec<String> = node.alignment.iter().map(|i| i.to_string()).collect();
            out.push_str(&indices.join(","));
        }
        for rel in self.relations.iter().filter(|r| r.source == variable) {
            out.push(' ');
            out.push_str(&rel.role);
            out.push(' ');
            match &rel.target {
                Target::Node(v) => {
                    if expanded.contains(v.as_str()) {
                        out.push_str(v);
                    } else {
                        expanded.insert(v.as_str());
                        self.write_node(out, v, expanded);
                    }
                }
                Target::Constant(c) => {
                    out.push_str(&c.to_string());
                }
            }
        }
        out.push(')');
    }
}

/// Strips a trailing sense suffix (dash + digits) from a concept label:
/// `establish-01` → `establish`. Labels without a suffix pass through.
pub fn strip_sense(label: &str) -> &str {
    match label.rsplit_once('-') {
        Some((head, tail))
            if !head.is_empty() && tail.len() >= 2 && tail.bytes().all(|b| b.is_ascii_digit()) =>
        {
            head
        }
        _ => label,
    }
}

/// True when `s` looks like a PENMAN variable: one ASCII letter followed by
/// optional digits (`b`, `g2`, `z12`).
pub(crate) fn looks_like_variable(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_digit()),
        _ => false,
    }
}

fn has_sense_suffix(label: &str) -> bool {
    strip_sense(label) != label
}

fn classify(label: &str, introducing_role: Option<&str>) -> NodeKind {
    if label == "name"
        || label == "amr-unknown"
        || label == "multi-sentence"
        || label.ends_with("-entity")
        || label.ends_with("-quantity")
    {
        NodeKind::Special
    } else if has_sense_suffix(label) {
        NodeKind::Predicate
    } else if matches!(introducing_role, Some(":mod" | ":manner" | ":degree")) {
        NodeKind::Modifier
    } else {
        NodeKind::Entity
    }
}

/// Splits an ISI alignment marker off a token: `label~e.3,5` → (`label`,
/// `[3, 5]`). Markers that fail to parse as indices are stripped anyway.
fn split_alignment(token: &str) -> (&str, Vec<u32>) {
    match token.split_once('~') {
        None => (token, Vec::new()),
        Some((head, tail)) => {
            let digits = tail.strip_prefix("e.").unwrap_or(tail);
            let indices = digits
                .split(',')
                .filter_map(|part| part.parse::<u32>().ok())
                .collect();
            (head, indices)
        }
    }
}

/// Pending relation target recorded during the first pass; bare tokens are
/// classified once every definition is known, so forward references resolve.
enum Pending {
    Node(String),
    Constant(Constant),
    Bare(String),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_whitespace(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Reads a run of token characters (anything but whitespace, parens,
    /// quotes, and `/`).
    fn read_token(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || matches!(c, '(' | ')' | '"' | '/') {
                break;
            }
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn parse_graph(mut self) -> Result<AmrGraph, PenmanError> {
        self.skip_whitespace();
        if self.peek().is_none() {
            return Err(PenmanError::EmptyInput);
        }
        let mut nodes = Vec::new();
        let mut pending: Vec<(String, String, Pending)> = Vec::new();
        let root = self.parse_node(None, &mut nodes, &mut pending)?;
        self.skip_whitespace();
        if let Some(c) = self.peek() {
            if c == ')' {
                return Err(PenmanError::UnbalancedParens(self.pos));
            }
            return Err(PenmanError::Unexpected {
                expected: "end of input",
                position: self.pos,
            });
        }

        // Second pass: classify bare targets now that definitions are known.
        let defined: std::collections::HashSet<&str> =
            nodes.iter().map(|n| n.variable.as_str()).collect();
        let mut relations = Vec::with_capacity(pending.len());
        for (source, role, target) in pending {
            let target = match target {
                Pending::Node(v) => Target::Node(v),
                Pending::Constant(c) => Target::Constant(c),
                Pending::Bare(tok) => {
                    if let Ok(i) = tok.parse::<i64>() {
                        Target::Constant(Constant::Integer(i))
                    } else if defined.contains(tok.as_str()) {
                        Target::Node(tok)
                    } else if looks_like_variable(&tok) {
                        return Err(PenmanError::DanglingReference(tok));
                    } else {
                        Target::Constant(Constant::Symbol(tok))
                    }
                }
            };
            relations.push(Relation {
                source,
                role,
                target,
            });
        }

        let graph = AmrGraph {
            root,
            nodes,
            relations,
            source_sentence_index: 0,
        };
        graph.validate()?;
        Ok(graph)
    }

    /// Parses one `(var / label relation*)` expression, returning its
    /// variable. Nested nodes recurse; bare targets are deferred.
    fn parse_node(
        &mut self,
        introducing_role: Option<&str>,
        nodes: &mut Vec<ConceptNode>,
        pending: &mut Vec<(String, String, Pending)>,
    ) -> Result<String, PenmanError> {
        self.skip_whitespace();
        if self.peek() != Some('(') {
            return Err(PenmanError::Unexpected {
                expected: "'('",
                position: self.pos,
            });
        }
        self.bump();
        self.skip_whitespace();
        let variable = self.read_token().to_string();
        if variable.is_empty() {
            return Err(PenmanError::Unexpected {
                expected: "variable",
                position: self.pos,
            });
        }
        self.skip_whitespace();
        if self.peek() != Some('/') {
            return Err(PenmanError::Unexpected {
                expected: "'/'",
                position: self.pos,
            });
        }
        self.bump();
        self.skip_whitespace();
        let raw_label = self.read_token();
        if raw_label.is_empty() {
            return Err(PenmanError::Unexpected {
                expected: "concept label",
                position: self.pos,
            });
        }
        let (label, alignment) = split_alignment(raw_label);
        if nodes.iter().any(|n| n.variable == variable) {
            return Err(PenmanError::DuplicateVariable(variable));
        }
        nodes.push(ConceptNode {
            variable: variable.clone(),
            label: label.to_string(),
            node_kind: classify(label, introducing_role),
            alignment,
        });

        loop {
            self.skip_whitespace();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    return Ok(variable);
                }
                Some(':') => {
                    let raw_role = self.read_token();
                    let (role, _) = split_alignment(raw_role);
                    if role.len() < 2 {
                        return Err(PenmanError::Unexpected {
                            expected: "role name after ':'",
                            position: self.pos,
                        });
                    }
                    let role = role.to_string();
                    self.skip_whitespace();
                    match self.peek() {
                        Some('(') => {
                            // The edge to the child precedes the child's own
                            // relations in document order, but the child must
                            // be parsed first to learn its variable: remember
                            // the slot, recurse, then insert.
                            let at = pending.len();
                            let child = self.parse_node(Some(&role), nodes, pending)?;
                            pending.insert(at, (variable.clone(), role, Pending::Node(child)));
                        }
                        Some('"') => {
                            let open = self.pos;
                            self.bump();
                            let start = self.pos;
                            loop {
                                match self.peek() {
                                    Some('"') => break,
                                    Some(_) => {
                                        self.bump();
                                    }
                                    None => {
                                        return Err(PenmanError::UnterminatedString(open));
                                    }
                                }
                            }
                            let literal = self.text[start..self.pos].to_string();
                            self.bump();
                            // Tolerate and discard an alignment on the literal.
                            let _ = self.read_token();
                            pending.push((
                                variable.clone(),
                                role,
                                Pending::Constant(Constant::Quoted(literal)),
                            ));
                        }
                        Some(')') | None => {
                            return Err(PenmanError::Unexpected {
                                expected: "relation target",
                                position: self.pos,
                            });
                        }
                        Some(_) => {
                            let raw = self.read_token();
                            let (token, _) = split_alignment(raw);
                            if token.is_empty() {
                                return Err(PenmanError::Unexpected {
                                    expected: "relation target",
                                    position: self.pos,
                                });
                            }
                            pending.push((
                                variable.clone(),
                                role,
                                Pending::Bare(token.to_string()),
                            ));
                        }
                    }
                }
                None => return Err(PenmanError::UnbalancedParens(self.pos)),
                Some(_) => {
                    return Err(PenmanError::Unexpected {
                        expected: "':' role or ')'",
                        position: self.pos,
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_graph() {
        let g = AmrGraph::parse("(b / boy)").unwrap();
        assert_eq!(g.root(), "b");
        assert_eq!(g.concept_nodes().len(), 1);
        assert_eq!(g.concept_nodes()[0].label, "boy");
        assert!(g.relations().is_empty());
    }

    #[test]
    fn parses_reentrancy_without_duplicating_nodes() {
        let g = AmrGraph::parse("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))").unwrap();
        assert_eq!(g.concept_nodes().len(), 3);
        assert_eq!(g.relations().len(), 3);
        let last = &g.relations()[2];
        assert_eq!(last.source, "g");
        assert_eq!(last.role, ":ARG0");
        assert_eq!(last.target, Target::Node("b".to_string()));
    }

    #[test]
    fn parses_integer_attributes() {
        let g = AmrGraph::parse("(d / date-entity :month 7 :year 2025)").unwrap();
        assert_eq!(g.concept_nodes().len(), 1);
        let attrs = g.attributes_of("d").unwrap();
        assert_eq!(attrs.len(), 2);
        assert_eq!(attrs[0], (":month", &Constant::Integer(7)));
        assert_eq!(attrs[1], (":year", &Constant::Integer(2025)));
    }

    #[test]
    fn concept_nodes_in_first_appearance_order() {
        let g = AmrGraph::parse("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))").unwrap();
        let labels: Vec<&str> = g.concept_nodes().iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, vec!["want-01", "boy", "go-02"]);
    }

    #[test]
    fn attributes_of_unknown_variable_errors() {
        let g = AmrGraph::parse("(b / boy)").unwrap();
        assert_eq!(
            g.attributes_of("z"),
            Err(PenmanError::UnknownVariable("z".to_string()))
        );
    }

    #[test]
    fn attributes_exclude_edges() {
        let g = AmrGraph::parse("(w / want-01 :ARG0 (b / boy) :polarity -)").unwrap();
        let attrs = g.attributes_of("w").unwrap();
        assert_eq!(attrs.len(), 1);
        assert_eq!(
            attrs[0],
            (":polarity", &Constant::Symbol("-".to_string()))
        );
    }

    #[test]
    fn quoted_literals_preserved_verbatim() {
        let g = AmrGraph::parse("(c / city :name (n / name :op1 \"New York\"))").unwrap();
        let attrs = g.attributes_of("n").unwrap();
        assert_eq!(attrs[0], (":op1", &Constant::Quoted("New York".to_string())));
        let text = g.serialize();
        assert!(text.contains("\"New York\""), "got {text}");
        assert_eq!(AmrGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(AmrGraph::parse(""), Err(PenmanError::EmptyInput));
        assert_eq!(AmrGraph::parse("   \n\t"), Err(PenmanError::EmptyInput));
        assert_eq!(AmrGraph::parse("# only a comment\n"), Err(PenmanError::EmptyInput));
    }

    #[test]
    fn unbalanced_parens_report_position() {
        match AmrGraph::parse("(w / want-01 :ARG0 (b / boy)") {
            Err(PenmanError::UnbalancedParens(_)) => {}
            other => panic!("expected UnbalancedParens, got {other:?}"),
        }
        match AmrGraph::parse("(b / boy))") {
            Err(PenmanError::UnbalancedParens(pos)) => assert_eq!(pos, 9),
            other => panic!("expected UnbalancedParens, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_variable_is_an_error() {
        assert_eq!(
            AmrGraph::parse("(b / boy :ARG0 (b / girl))"),
            Err(PenmanError::DuplicateVariable("b".to_string()))
        );
    }

    #[test]
    fn dangling_variable_reference_is_an_error() {
        assert_eq!(
            AmrGraph::parse("(w / want-01 :ARG0 b2)"),
            Err(PenmanError::DanglingReference("b2".to_string()))
        );
    }

    #[test]
    fn bare_words_are_symbols_not_references() {
        let g = AmrGraph::parse("(s / say-01 :mode imperative)").unwrap();
        let attrs = g.attributes_of("s").unwrap();
        assert_eq!(
            attrs[0],
            (":mode", &Constant::Symbol("imperative".to_string()))
        );
    }

    #[test]
    fn comment_lines_are_skipped() {
        let text = "# ::id sentence-1\n# ::snt The boy wants to go.\n(w / want-01 :ARG0 (b / boy))";
        let g = AmrGraph::parse(text).unwrap();
        assert_eq!(g.concept_nodes().len(), 2);
    }

    #[test]
    fn multiline_graphs_parse() {
        let text = "(w / want-01\n   :ARG0 (b / boy)\n   :ARG1 (g / go-02\n      :ARG0 b))";
        let g = AmrGraph::parse(text).unwrap();
        assert_eq!(g.concept_nodes().len(), 3);
    }

    #[test]
    fn alignment_markers_recorded_on_labels() {
        let g = AmrGraph::parse("(e / establish-01~e.2 :ARG1 (m / museum~e.4))").unwrap();
        assert_eq!(g.node("e").unwrap().alignment, vec![2]);
        assert_eq!(g.node("e").unwrap().label, "establish-01");
        assert_eq!(g.node("m").unwrap().alignment, vec![4]);
    }

    #[test]
    fn alignment_markers_survive_round_trip() {
        let g = AmrGraph::parse("(e / establish-01~e.2,3 :ARG1 (m / museum))").unwrap();
        let text = g.serialize();
        assert!(text.contains("establish-01~e.2,3"), "got {text}");
        assert_eq!(AmrGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn alignment_on_constants_is_stripped() {
        let g = AmrGraph::parse("(c / city :name (n / name :op1 \"Paris\"~e.3))").unwrap();
        let attrs = g.attributes_of("n").unwrap();
        assert_eq!(attrs[0], (":op1", &Constant::Quoted("Paris".to_string())));
    }

    #[test]
    fn serialize_minimal() {
        let g = AmrGraph::parse("(b / boy)").unwrap();
        assert_eq!(g.serialize(), "(b / boy)");
    }

    #[test]
    fn serialize_round_trips_want_example() {
        let g = AmrGraph::parse("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))").unwrap();
        let text = g.serialize();
        assert_eq!(text, "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
        assert_eq!(AmrGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn forward_references_round_trip() {
        // b is referenced before its definition; re-serialization moves the
        // definition to the first mention but the structure is unchanged.
        let g = AmrGraph::parse("(w / want-01 :ARG0 b :ARG1 (b / boy))").unwrap();
        assert_eq!(g.relations().len(), 2);
        let text = g.serialize();
        assert_eq!(text, "(w / want-01 :ARG0 (b / boy) :ARG1 b)");
        assert_eq!(AmrGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn forward_reference_with_children_normalizes_in_one_pass() {
        // b is forward-referenced AND has an outgoing relation, so
        // re-serialization re-anchors b's subtree at the first mention: the
        // relation sequence changes once, then the text is a fixed point.
        let first =
            AmrGraph::parse("(w / want-01 :ARG0 b :ARG1 (b / boy :mod (g / good)))").unwrap();
        let canonical = first.serialize();
        assert_eq!(canonical, "(w / want-01 :ARG0 (b / boy :mod (g / good)) :ARG1 b)");
        let normalized = AmrGraph::parse(&canonical).unwrap();
        assert_ne!(first, normalized, "b's :mod edge moves to the first mention");
        // Root, node set, and relation multiset are untouched by the move.
        assert_eq!(first.root(), normalized.root());
        let sorted_edges = |g: &AmrGraph| {
            let mut edges: Vec<String> = g
                .relations()
                .iter()
                .map(|r| format!("{} {} {}", r.source, r.role, r.target))
                .collect();
            edges.sort();
            edges
        };
        assert_eq!(sorted_edges(&first), sorted_edges(&normalized));
        // First-mention form round-trips exactly.
        assert_eq!(normalized.serialize(), canonical);
        assert_eq!(AmrGraph::parse(&normalized.serialize()).unwrap(), normalized);
    }

    #[test]
    fn node_count_equals_concept_introductions() {
        let text = "(a / and :op1 (x / run-02 :ARG0 (d / dog)) :op2 (y / bark-01 :ARG0 d))";
        let g = AmrGraph::parse(text).unwrap();
        assert_eq!(
            g.concept_nodes().len(),
            text.matches(" / ").count(),
        );
    }

    #[test]
    fn node_kinds_classified() {
        let g = AmrGraph::parse(
            "(e / establish-01 :ARG1 (m / museum :mod (h / historic)) :time (d / date-entity :year 1901))",
        )
        .unwrap();
        assert_eq!(g.node("e").unwrap().node_kind, NodeKind::Predicate);
        assert_eq!(g.node("m").unwrap().node_kind, NodeKind::Entity);
        assert_eq!(g.node("h").unwrap().node_kind, NodeKind::Modifier);
        assert_eq!(g.node("d").unwrap().node_kind, NodeKind::Special);
    }

    #[test]
    fn strip_sense_handles_suffixes() {
        assert_eq!(strip_sense("establish-01"), "establish");
        assert_eq!(strip_sense("have-org-role-91"), "have-org-role");
        assert_eq!(strip_sense("date-entity"), "date-entity");
        assert_eq!(strip_sense("boy"), "boy");
        assert_eq!(strip_sense("-01"), "-01");
    }

    #[test]
    fn constructor_validates_invariants() {
        let node = |v: &str, l: &str| ConceptNode {
            variable: v.to_string(),
            label: l.to_string(),
            node_kind: NodeKind::Entity,
            alignment: Vec::new(),
        };
        let err = AmrGraph::new(
            "a",
            vec![node("a", "alpha"), node("b", "beta")],
            Vec::new(),
        )
        .unwrap_err();
        assert_eq!(err, PenmanError::UnreachableNode("b".to_string()));

        let err = AmrGraph::new(
            "a",
            vec![node("a", "alpha")],
            vec![Relation {
                source: "a".to_string(),
                role: ":ARG0".to_string(),
                target: Target::Node("z".to_string()),
            }],
        )
        .unwrap_err();
        assert_eq!(err, PenmanError::DanglingReference("z".to_string()));
    }

    #[test]
    fn missing_role_colon_is_an_error() {
        match AmrGraph::parse("(b / boy mod (t / tall))") {
            Err(PenmanError::Unexpected { .. }) => {}
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
