//! Surface realization of selected concepts into a compressed context.
//!
//! The survivors of the significance test are still graph labels
//! (`establish-01`, `date-entity`). This module turns them back into
//! readable text: calendar nodes are rendered from their attributes
//! (`:month 7 :year 2025` → `"July 2025"`), every other label is matched
//! against the source document to recover its original inflected form
//! (`establish-01` → `"established"`), consecutive duplicates are collapsed,
//! and the results are joined — spaces within a document, newlines between
//! documents.
//!
//! A compressed document is guaranteed never to exceed its source in
//! whitespace tokens or characters; concepts that would overflow are dropped
//! from the tail and counted.

use crate::penman::{strip_sense, AmrGraph, Constant};
use crate::stats::SignificanceResult;
use thiserror::Error;

/// Errors produced during realization.
#[derive(Debug, Error, PartialEq)]
pub enum DistillError {
    /// A selection entry referenced a variable the graph does not define.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    /// A calendar node carried a month outside 1–12.
    #[error("month {0} out of range 1..=12")]
    MonthOutOfRange(i64),
}

/// One document after compression.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressedDocument {
    pub document_id: String,
    /// Realized concept strings, post-dedup, in source order.
    pub concepts: Vec<String>,
    /// The concepts joined by single spaces.
    pub text: String,
    /// Concepts dropped from the tail to keep the text within the source's
    /// token and character budget.
    pub dropped_for_length: usize,
}

/// The final compressed context across all documents of a record.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressedContext {
    pub per_document: Vec<CompressedDocument>,
    /// Non-empty document texts joined by newlines.
    pub text: String,
}

const MONTH_NAMES: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

fn integer_attribute(g: &AmrGraph, variable: &str, role: &str) -> Option<i64> {
    g.relations()
        .iter()
        .filter(|r| r.source == variable && r.role == role)
        .find_map(|r| match &r.target {
            crate::penman::Target::Constant(Constant::Integer(i)) => Some(*i),
            _ => None,
        })
}

/// Renders a calendar node as natural text. Returns `None` for non-calendar
/// nodes and for attribute combinations with no natural rendering
/// (month-only, day-only). A `:month` outside 1–12 is an error even when the
/// rendering would not use it.
pub fn reconstruct_temporal(g: &AmrGraph, v: &str) -> Result<Option<String>, DistillError> {
    let node = g
        .node(v)
        .ok_or_else(|| DistillError::UnknownVariable(v.to_string()))?;
    if node.label != "date-entity" {
        return Ok(None);
    }
    let day = integer_attribute(g, v, ":day");
    let month = integer_attribute(g, v, ":month");
    let year = integer_attribute(g, v, ":year");

    let month_name = match month {
        Some(m) if (1..=12).contains(&m) => Some(MONTH_NAMES[(m - 1) as usize]),
        Some(m) => return Err(DistillError::MonthOutOfRange(m)),
        None => None,
    };

    Ok(match (day, month_name, year) {
        (Some(d), Some(m), Some(y)) => Some(format!("{m} {d}, {y}")),
        (_, Some(m), Some(y)) => Some(format!("{m} {y}")),
        // A year with no month renders alone, even when a day is present:
        // "4, 1999" would not read as a date.
        (_, None, Some(y)) => Some(y.to_string()),
        (Some(d), Some(m), None) => Some(format!("{m} {d}")),
        _ => None,
    })
}

/// Collapses runs of equal adjacent entries (case-sensitive) to a single
/// one. Non-adjacent duplicates are deliberately preserved.
pub fn dedup_adjacent(items: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(items.len());
    for item in items {
        if out.last().map(|s| s.as_str()) != Some(item.as_str()) {
            out.push(item.clone());
        }
    }
    out
}

fn trim_punct(word: &str) -> &str {
    word.trim_matches(|c: char| !c.is_alphanumeric())
}

/// Maps a concept label back to a surface word from the source document.
/// The sense suffix is stripped, then every source word (lowercased,
/// punctuation-trimmed) is tested against stem + suffix combinations, where
/// the stems probe trailing `e`/`s`/`ed`/`ing` removal from the lemma and
/// the suffixes probe the same set added back. The longest matching word
/// wins (ties go to the earliest), in its original casing. With no match
/// the stripped label itself is returned, so the result is never empty for
/// a non-empty label.
pub fn realize_surface(label: &str, source_text: &str) -> String {
    let lemma = strip_sense(label).to_lowercase();
    let mut stems: Vec<&str> = vec![&lemma];
    for suffix in ["e", "s", "ed", "ing"] {
        if let Some(stem) = lemma.strip_suffix(suffix) {
            if !stem.is_empty() {
                stems.push(stem);
            }
        }
    }

    let mut best: Option<&str> = None;
    for word in source_text.split_whitespace() {
        let trimmed = trim_punct(word);
        if trimmed.is_empty() {
            continue;
        }
        let lowered = trimmed.to_lowercase();
        let matches = stems.iter().any(|stem| {
            ["", "e", "s", "ed", "ing"]
                .iter()
                .any(|suffix| lowered.len() == stem.len() + suffix.len()
                    && lowered.starts_with(stem)
                    && lowered.ends_with(suffix))
        });
        if matches && best.is_none_or(|b| trimmed.len() > b.len()) {
            best = Some(trimmed);
        }
    }
    match best {
        Some(word) => word.to_string(),
        None => strip_sense(label).to_string(),
    }
}

/// Realizes the selected concepts of one document. `graphs` are the
/// document's sentence graphs in order; `selection` is the pooled
/// significance output for the same graphs, whose entries appear in
/// (graph, node) order. Calendar nodes render via [`reconstruct_temporal`]
/// (combinations with no rendering contribute nothing), everything else via
/// [`realize_surface`]; adjacent duplicates collapse after realization, and
/// the tail is trimmed if the text would exceed the source's whitespace
/// tokens or characters.
pub fn compress_document(
    document_id: impl Into<String>,
    graphs: &[AmrGraph],
    selection: &[SignificanceResult],
    source_text: &str,
) -> Result<CompressedDocument, DistillError> {
    let mut realized: Vec<String> = Vec::new();
    let mut cursor = selection.iter().peekable();
    for g in graphs {
        for node in g.concept_nodes() {
            let Some(next) = cursor.peek() else { break };
            let is_match = match next.variable.as_deref() {
                Some(v) => v == node.variable && next.concept_label == node.label,
                None => next.concept_label == node.label,
            };
            if !is_match {
                continue;
            }
            let entry = cursor.next().expect("peeked");
            if !entry.selected {
                continue;
            }
            if node.label == "date-entity" {
                if let Some(rendered) = reconstruct_temporal(g, &node.variable)? {
                    realized.push(rendered);
                }
            } else {
                realized.push(realize_surface(&node.label, source_text));
            }
        }
    }

    let mut concepts = dedup_adjacent(&realized);

    // Compression must never exceed the source; drop from the tail until
    // both the token and the character budget hold.
    let token_budget = source_text.split_whitespace().count();
    let char_budget = source_text.chars().count();
    let mut dropped_for_length = 0;
    let mut text = concepts.join(" ");
    while !concepts.is_empty()
        && (text.split_whitespace().count() > token_budget || text.chars().count() > char_budget)
    {
        concepts.pop();
        dropped_for_length += 1;
        text = concepts.join(" ");
    }

    Ok(CompressedDocument {
        document_id: document_id.into(),
        concepts,
        text,
        dropped_for_length,
    })
}

/// Joins per-document compressions into the final context. Documents with
/// empty text contribute no line, so an all-empty record yields an empty
/// string rather than bare newlines.
pub fn compress_context(docs: Vec<CompressedDocument>) -> CompressedContext {
    let text = docs
        .iter()
        .map(|d| d.text.as_str())
        .filter(|t| !t.is_empty())
        .collect::<Vec<_>>()
        .join("\n");
    CompressedContext {
        per_document: docs,
        text,
    }
}
