//! TF-IDF term-retention baseline for head-to-head comparison.
//!
//! The baseline compresses a document by keeping only its statistically
//! salient tokens: each token occurrence is scored `tf(term) · idf(term)`
//! against a corpus-wide document-frequency table, the top
//! `⌈keep_fraction · n⌉` occurrences survive, and survivors are emitted in
//! their original order with their original spelling.
//!
//! Terms are whitespace tokens normalized to lowercase alphanumerics
//! (`"Paris,"` and `"paris"` are one term); `idf = ln(N/df)` without
//! smoothing, so a term present in every document scores zero and a term
//! absent from the table scores `ln N`.

use std::collections::{HashMap, HashSet};
use thiserror::Error;

/// Errors produced by the baseline.
#[derive(Debug, Error, PartialEq)]
pub enum TfidfError {
    /// The corpus contained no documents.
    #[error("empty corpus")]
    EmptyCorpus,
    /// The document contained no tokens.
    #[error("empty document")]
    EmptyDocument,
    /// keep_fraction must lie in (0, 1].
    #[error("keep_fraction {0} outside (0, 1]")]
    InvalidKeepFraction(f64),
}

/// Corpus-wide document frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct IdfTable {
    pub document_count: usize,
    /// Lowercased alphanumeric term → number of documents containing it.
    pub term_df: HashMap<String, usize>,
}

/// Normalizes a whitespace token to its term key: lowercase, alphanumeric
/// characters only. Pure-punctuation tokens normalize to the empty string
/// and carry no weight.
fn term_key(token: &str) -> String {
    token
        .chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(char::to_lowercase)
        .collect()
}

impl IdfTable {
    /// Inverse document frequency `ln(N / df)`. A term missing from the
    /// table is treated as df = 1 (maximally rare), yielding `ln N`.
    pub fn idf(&self, term: &str) -> f64 {
        let df = self.term_df.get(term).copied().unwrap_or(1).max(1);
        (self.document_count as f64 / df as f64).ln()
    }
}

/// Builds the document-frequency table over a corpus.
pub fn build_idf<S: AsRef<str>>(corpus: &[S]) -> Result<IdfTable, TfidfError> {
    if corpus.is_empty() {
        return Err(TfidfError::EmptyCorpus);
    }
    let mut term_df: HashMap<String, usize> = HashMap::new();
    for doc in corpus {
        let terms: HashSet<String> = doc
            .as_ref()
            .split_whitespace()
            .map(term_key)
            .filter(|t| !t.is_empty())
            .collect();
        for term in terms {
            *term_df.entry(term).or_insert(0) += 1;
        }
    }
    Ok(IdfTable {
        document_count: corpus.len(),
        term_df,
    })
}

/// Keeps the top `⌈keep_fraction · n⌉` token occurrences of `doc` by
/// `tf · idf` score (ties to the earlier position) and emits them in
/// original order, joined by single spaces.
pub fn compress_tfidf(doc: &str, idf: &IdfTable, keep_fraction: f64) -> Result<String, TfidfError> {
    if !(keep_fraction > 0.0 && keep_fraction <= 1.0) {
        return Err(TfidfError::InvalidKeepFraction(keep_fraction));
    }
    let tokens: Vec<&str> = doc.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(TfidfError::EmptyDocument);
    }

    let keys: Vec<String> = tokens.iter().map(|t| term_key(t)).collect();
    let mut tf: HashMap<&str, usize> = HashMap::new();
    for key in &keys {
        if !key.is_empty() {
            *tf.entry(key).or_insert(0) += 1;
        }
    }
    let scores: Vec<f64> = keys
        .iter()
        .map(|key| {
            if key.is_empty() {
                0.0
            } else {
                tf[key.as_str()] as f64 * idf.idf(key)
            }
        })
        .collect();

    let keep = (keep_fraction * tokens.len() as f64).ceil() as usize;
    let mut order: Vec<usize> = (0..tokens.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = order.into_iter().take(keep).collect();
    kept.sort_unstable();

    Ok(kept
        .into_iter()
        .map(|i| tokens[i])
        .collect::<Vec<_>>()
        .join(" "))
}
