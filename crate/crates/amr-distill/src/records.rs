//! Line-delimited record schemas for batch I/O.
//!
//! Every input and output file is UTF-8 JSON, one self-describing record
//! per line, with a `version` field (current version: 1).
//!
//! Corpus input line:
//!
//! ```json
//! {"version":1,"query_id":"q1","query":"...","answers":["..."],
//!  "documents":[{"text":"...","hasanswer":true,
//!    "graphs":[{"penman":"(b / boy)",
//!      "tokens":[{"text":"Ġboy","logprob":-0.7}]}]}]}
//! ```
//!
//! Logprobs are natural-log probabilities (≤ 0). Prediction lines carry
//! `{query_id, model_id, method_id, generated}`. Output schemas are the
//! serializable structs below; a record that fails schema validation is
//! reported with its line number and skipped without aborting the batch.

use crate::entropy::ScoredToken;
use crate::eval::{DocumentEntry, GraphWithScores, QaInstance};
use crate::penman::{AmrGraph, PenmanError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Current record schema version.
pub const SCHEMA_VERSION: u32 = 1;

fn default_version() -> u32 {
    SCHEMA_VERSION
}

/// Why a corpus line was rejected.
#[derive(Debug, Error, PartialEq)]
pub enum RecordError {
    /// The line violates the documented schema (bad JSON, missing fields,
    /// wrong version, empty answers, positive logprob). Counts toward a
    /// nonzero exit.
    #[error("schema violation: {0}")]
    Schema(String),
    /// A graph inside an otherwise valid record failed to parse. The record
    /// is skipped and counted; the batch continues.
    #[error("document {document} graph {graph}: {source}")]
    GraphParse {
        document: usize,
        graph: usize,
        source: PenmanError,
    },
}

/// One token of a linearized graph, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenRecord {
    pub text: String,
    /// Natural-log probability; must be finite and ≤ 0.
    pub logprob: f64,
}

/// One sentence graph of a document, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    /// PENMAN expression for the sentence.
    pub penman: String,
    /// Token scores of the expression's linearization.
    pub tokens: Vec<TokenRecord>,
}

/// One retrieved document, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub text: String,
    pub hasanswer: bool,
    pub graphs: Vec<GraphRecord>,
}

/// One corpus line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRecord {
    #[serde(default = "default_version")]
    pub version: u32,
    pub query_id: String,
    pub query: String,
    pub answers: Vec<String>,
    pub documents: Vec<DocumentRecord>,
}

impl CorpusRecord {
    /// Parses one line into a record, enforcing the schema invariants that
    /// serde cannot express.
    pub fn from_line(line: &str) -> Result<Self, RecordError> {
        let record: CorpusRecord =
            serde_json::from_str(line).map_err(|e| RecordError::Schema(e.to_string()))?;
        if record.version != SCHEMA_VERSION {
            return Err(RecordError::Schema(format!(
                "unsupported version {} (expected {SCHEMA_VERSION})",
                record.version
            )));
        }
        if record.query_id.is_empty() {
            return Err(RecordError::Schema("empty query_id".to_string()));
        }
        if record.answers.is_empty() {
            return Err(RecordError::Schema(format!(
                "record `{}` has no answers",
                record.query_id
            )));
        }
        for (d, doc) in record.documents.iter().enumerate() {
            for (g, graph) in doc.graphs.iter().enumerate() {
                for (t, token) in graph.tokens.iter().enumerate() {
                    if !token.logprob.is_finite() || token.logprob > 0.0 {
                        return Err(RecordError::Schema(format!(
                            "record `{}` document {d} graph {g} token {t}: logprob {} \
                             must be finite and ≤ 0",
                            record.query_id, token.logprob
                        )));
                    }
                }
            }
        }
        Ok(record)
    }

    /// Converts the wire record into the in-memory instance, parsing every
    /// graph. The first graph that fails to parse rejects the whole record.
    pub fn into_instance(self) -> Result<QaInstance, RecordError> {
        let mut documents = Vec::with_capacity(self.documents.len());
        for (d, doc) in self.documents.into_iter().enumerate() {
            let mut graphs = Vec::with_capacity(doc.graphs.len());
            for (g, graph) in doc.graphs.into_iter().enumerate() {
                let mut parsed =
                    AmrGraph::parse(&graph.penman).map_err(|source| RecordError::GraphParse {
                        document: d,
                        graph: g,
                        source,
                    })?;
                parsed.source_sentence_index = g;
                let tokens = graph
                    .tokens
                    .into_iter()
                    .enumerate()
                    .map(|(i, t)| ScoredToken::new(t.text, t.logprob, i))
                    .collect();
                graphs.push(GraphWithScores {
                    graph: parsed,
                    tokens,
                });
            }
            documents.push(DocumentEntry {
                text: doc.text,
                hasanswer: doc.hasanswer,
                graphs,
            });
        }
        let k = documents.iter().filter(|d| d.hasanswer).count();
        Ok(QaInstance {
            query_id: self.query_id,
            query: self.query,
            answers: self.answers,
            documents,
            k,
        })
    }
}

/// Per-document slice of a compression output line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressDocOutput {
    pub document_id: String,
    pub text: String,
    pub selected_concepts: usize,
    pub dropped_for_length: usize,
    /// Concept nodes that could not be aligned to any token unit.
    pub unmatched_nodes: usize,
}

/// One `compress` output line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressOutput {
    pub version: u32,
    pub query_id: String,
    /// Answer-bearing document count after filtering.
    pub k: usize,
    /// The compressed context C' (documents joined by newlines).
    pub context: String,
    /// Token-level compression ratio against the filtered source documents.
    pub tau: f64,
    pub documents: Vec<CompressDocOutput>,
}

/// One `tfidf` output line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfOutput {
    pub version: u32,
    pub query_id: String,
    pub k: usize,
    pub context: String,
    pub tau: f64,
    pub documents: Vec<TfidfDocOutput>,
}

/// Per-document slice of a `tfidf` output line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfDocOutput {
    pub document_id: String,
    pub text: String,
}

/// One `score` output line: a single concept's test audit trail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub version: u32,
    pub query_id: String,
    pub document_id: String,
    pub concept_label: String,
    pub variable: Option<String>,
    pub entropy: f64,
    pub t_stat: f64,
    pub p_value: f64,
    pub selected: bool,
    pub degenerate: bool,
}
