//! Entropy-guided compression of retrieved documents into compact fact
//! contexts, driven by sentence-level semantic graphs.
//!
//! The pipeline ingests documents that have already been parsed into
//! PENMAN-notation semantic graphs together with the parser's per-token
//! log-probabilities, then:
//!
//! 1. [`penman`] — parses each graph and exposes its concept nodes;
//! 2. [`entropy`] — segments the linearization into subword units and scores
//!    every concept with its mean token entropy `H(v) = mean(exp(-logprob))`;
//! 3. [`stats`] — runs a one-sample t-test per document and keeps the
//!    concepts whose entropy is significantly above the document mean;
//! 4. [`distill`] — maps the surviving concepts back to surface words
//!    (including calendar reconstruction for date nodes) and joins them into
//!    the compressed context.
//!
//! Around that core live a [`tfidf`] retention baseline, an [`eval`] harness
//! (exact match, accuracy-vs-K tables, trapezoidal AUC, cross-model sigma),
//! fixture replay in [`tables`], and a batch [`cli`] front-end exposed
//! through the `amrd` binary.
//!
//! Each major capability has a runnable demo under `examples/`:
//!
//! ```text
//! cargo run --example parse_graph       # PENMAN parsing + round-trip
//! cargo run --example entropy_scores    # token entropies and concept units
//! cargo run --example significance      # t-test selection at work
//! cargo run --example compress_context  # end-to-end record compression
//! cargo run --example tfidf_baseline    # the TF-IDF retention baseline
//! cargo run --example evaluate          # accuracy / AUC / sigma reporting
//! cargo run --example replay_tables     # golden-table verification
//! ```

pub mod cli;
pub mod config;
pub mod distill;
pub mod entropy;
pub mod eval;
pub mod penman;
pub mod pipeline;
pub mod records;
pub mod stats;
pub mod tables;
pub mod tfidf;

pub use config::PipelineConfig;
pub use distill::{CompressedContext, CompressedDocument};
pub use entropy::{ConceptEntropy, ConceptUnit, ScoredToken};
pub use eval::{AccuracyTable, AucReport, MatchPolicy, PredictionRecord, QaInstance};
pub use penman::{AmrGraph, ConceptNode, Constant, NodeKind, Relation};
pub use stats::{EntropyPopulation, SelectionMode, SignificanceResult};
