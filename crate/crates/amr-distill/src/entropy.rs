//! Token-level entropy scoring and its aggregation to concept level.
//!
//! The parser that produced a graph also reports, for every subword token of
//! the linearized graph text, the natural-log probability it assigned that
//! token. The entropy of a token is `E = exp(-logprob)` (the reciprocal
//! probability), and the entropy of a concept is the arithmetic mean over
//! the subword tokens that spell it — so multi-token concepts are not
//! penalized for being split by the tokenizer.
//!
//! Segmentation groups the token stream into units at boundary-prefix marks
//! (`"Ġ"` for GPT-2-family tokenizers), flags graph syntax (roles, parens,
//! variables, quote marks) as structural, and matches the remaining units to
//! concept-node labels lexically: first case-insensitively verbatim, then
//! with sense suffixes stripped, consuming each unit at most once. Nodes no
//! unit matches are reported, never scored.

use crate::penman::{strip_sense, AmrGraph};
use thiserror::Error;

/// Boundary prefix used by GPT-2-family byte-pair tokenizers.
pub const DEFAULT_BOUNDARY_PREFIX: &str = "Ġ";

/// Errors produced while scoring tokens or concepts.
#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    /// A token's logprob was NaN or infinite.
    #[error("non-finite logprob {logprob} at token {index}")]
    NonFiniteLogProb { index: usize, logprob: f64 },
    /// An empty token sequence cannot be segmented.
    #[error("empty token sequence")]
    EmptySequence,
    /// A unit referenced a token index beyond the sequence.
    #[error("token index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// One subword token of a linearized graph with its model logprob.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredToken {
    /// Token text, possibly starting with the boundary prefix.
    pub text: String,
    /// Natural-log probability assigned by the parser model; ≤ 0.
    pub logprob: f64,
    /// Position in the linearized sequence.
    pub index: usize,
}

impl ScoredToken {
    pub fn new(text: impl Into<String>, logprob: f64, index: usize) -> Self {
        ScoredToken {
            text: text.into(),
            logprob,
            index,
        }
    }
}

/// A maximal run of subword tokens spelling one surface unit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptUnit {
    /// Positions into the token slice; contiguous and ascending.
    pub token_indices: Vec<usize>,
    /// Subwords joined with the boundary prefix stripped.
    pub detokenized: String,
    /// True for graph syntax: roles, parens, slashes, variables, quotes.
    pub is_structural: bool,
}

/// Entropy of one concept node, aggregated over its subword tokens.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptEntropy {
    /// Label of the matched concept node.
    pub concept_label: String,
    /// Variable of the matched node; `None` when scored outside a graph.
    pub variable: Option<String>,
    /// Mean token entropy H(v); ≥ 1 for well-formed logprobs.
    pub entropy: f64,
    /// Number of subword tokens in the unit (m ≥ 1).
    pub subword_count: usize,
}

/// Result of scoring a graph: per-node entropies plus the nodes that could
/// not be aligned to any unit (excluded from every downstream population).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConceptScores {
    /// One entry per matched node, in `concept_nodes` order.
    pub concepts: Vec<ConceptEntropy>,
    /// Variables of concept nodes no unit matched.
    pub unmatched: Vec<String>,
}

/// Entropy of a single token: `exp(-logprob)`, the reciprocal of the
/// probability the model assigned it.
pub fn token_entropy(token: &ScoredToken) -> Result<f64, EntropyError> {
    if !token.logprob.is_finite() {
        return Err(EntropyError::NonFiniteLogProb {
            index: token.index,
            logprob: token.logprob,
        });
    }
    Ok((-token.logprob).exp())
}

/// True when the detokenized form is graph syntax rather than a concept:
/// a role (`:ARG0`), a paren or slash, a bare variable (`b`, `g2`), or a
/// quoted-literal delimiter.
fn is_structural(detokenized: &str) -> bool {
    detokenized.is_empty()
        || detokenized.starts_with(':')
        || matches!(detokenized, "(" | ")" | "/")
        || detokenized.starts_with('"')
        || detokenized.ends_with('"')
        || crate::penman::looks_like_variable(detokenized)
}

/// Groups a token stream into units. A new unit opens at every token whose
/// text starts with `boundary_prefix` (and at the first token regardless);
/// every token belongs to exactly one unit.
pub fn segment_units(
    tokens: &[ScoredToken],
    boundary_prefix: &str,
) -> Result<Vec<ConceptUnit>, EntropyError> {
    if tokens.is_empty() {
        return Err(EntropyError::EmptySequence);
    }
    let mut units: Vec<ConceptUnit> = Vec::new();
    for (i, token) in tokens.iter().enumerate() {
        let stripped = token.text.strip_prefix(boundary_prefix);
        let opens_unit = i == 0 || stripped.is_some();
        let piece = stripped.unwrap_or(&token.text);
        if opens_unit {
            units.push(ConceptUnit {
                token_indices: vec![i],
                detokenized: piece.to_string(),
                is_structural: false,
            });
        } else {
            let unit = units.last_mut().expect("first token opened a unit");
            unit.token_indices.push(i);
            unit.detokenized.push_str(piece);
        }
    }
    for unit in &mut units {
        unit.is_structural = is_structural(&unit.detokenized);
    }
    Ok(units)
}

/// Mean token entropy over a unit's tokens.
pub fn concept_entropy(unit: &ConceptUnit, tokens: &[ScoredToken]) -> Result<f64, EntropyError> {
    let mut sum = 0.0;
    for &i in &unit.token_indices {
        let token = tokens.get(i).ok_or(EntropyError::IndexOutOfRange {
            index: i,
            len: tokens.len(),
        })?;
        sum += token_entropy(token)?;
    }
    Ok(sum / unit.token_indices.len() as f64)
}

/// Scores every concept node of `g` against the token stream of its own
/// linearization. Matching is lexical and consumes each unit at most once:
/// pass one compares unit text to node labels case-insensitively verbatim,
/// pass two retries the leftovers with sense suffixes stripped
/// (`establish` ↔ `establish-01`). Duplicate labels match in order of
/// appearance. Output order follows [`AmrGraph::concept_nodes`].
pub fn score_graph_concepts(
    g: &AmrGraph,
    tokens: &[ScoredToken],
    boundary_prefix: &str,
) -> Result<ConceptScores, EntropyError> {
    let units = segment_units(tokens, boundary_prefix)?;
    let candidates: Vec<(usize, String)> = units
        .iter()
        .enumerate()
        .filter(|(_, u)| !u.is_structural)
        .map(|(i, u)| (i, u.detokenized.to_lowercase()))
        .collect();

    let nodes = g.concept_nodes();
    let mut matched_unit: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut consumed = vec![false; units.len()];

    // Pass 1: verbatim label match; pass 2: sense-stripped fallback.
    for exact in [true, false] {
        for (n, node) in nodes.iter().enumerate() {
            if matched_unit[n].is_some() {
                continue;
            }
            let wanted = if exact {
                node.label.to_lowercase()
            } else {
                strip_sense(&node.label).to_lowercase()
            };
            for (u, text) in &candidates {
                if !consumed[*u] && *text == wanted {
                    consumed[*u] = true;
                    matched_unit[n] = Some(*u);
                    break;
                }
            }
        }
    }

    let mut scores = ConceptScores::default();
    for (n, node) in nodes.iter().enumerate() {
        match matched_unit[n] {
            Some(u) => {
                let unit = &units[u];
                scores.concepts.push(ConceptEntropy {
                    concept_label: node.label.clone(),
                    variable: Some(node.variable.clone()),
                    entropy: concept_entropy(unit, tokens)?,
                    subword_count: unit.token_indices.len(),
                });
            }
            None => scores.unmatched.push(node.variable.clone()),
        }
    }
    Ok(scores)
}
