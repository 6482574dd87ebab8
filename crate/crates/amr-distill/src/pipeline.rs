//! Per-instance orchestration of the compression pipeline.
//!
//! For one `⟨query, answers, documents⟩` instance: filter to answer-bearing
//! documents, pool each document's concept entropies across its sentence
//! graphs, run the significance test per document, realize the survivors,
//! and assemble the compressed context with its diagnostics. The TF-IDF
//! baseline and the per-concept score dump share the same filtering and
//! framing.
//!
//! Everything here is pure; instances are independent, so callers may
//! process them on any worker pool and keep outputs in input order.

use crate::config::PipelineConfig;
use crate::distill::{self, DistillError};
use crate::entropy::{self, ConceptEntropy, EntropyError};
use crate::eval::{self, QaInstance};
use crate::records::{
    CompressDocOutput, CompressOutput, ScoreRow, TfidfDocOutput, TfidfOutput, SCHEMA_VERSION,
};
use crate::stats::{self, SignificanceResult, StatsError};
use crate::tfidf::{self, IdfTable, TfidfError};
use thiserror::Error;

/// A record-level processing failure: the record is logged, counted, and
/// skipped; the batch continues.
#[derive(Debug, Error, PartialEq)]
pub enum PipelineError {
    #[error("entropy scoring: {0}")]
    Entropy(#[from] EntropyError),
    #[error("significance test: {0}")]
    Stats(#[from] StatsError),
    #[error("surface realization: {0}")]
    Distill(#[from] DistillError),
    #[error("tfidf baseline: {0}")]
    Tfidf(#[from] TfidfError),
}

/// Why an instance was excluded from processing (not an error).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    /// No document survived the answer-bearing filter (k = 0).
    NoAnswerBearingDocuments,
    /// More answer-bearing documents than the configured maximum.
    DepthExceedsLimit { k: usize, k_max: usize },
}

impl std::fmt::Display for SkipReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SkipReason::NoAnswerBearingDocuments => write!(f, "k = 0 after filtering"),
            SkipReason::DepthExceedsLimit { k, k_max } => {
                write!(f, "k = {k} exceeds k_max = {k_max}")
            }
        }
    }
}

/// Filters an instance to its answer-bearing documents and applies the K
/// window. `Err` is a skip, not a failure.
pub fn prepare_instance(instance: QaInstance, k_max: usize) -> Result<QaInstance, SkipReason> {
    let filtered = eval::filter_hasanswer(instance);
    if filtered.k == 0 {
        return Err(SkipReason::NoAnswerBearingDocuments);
    }
    if filtered.k > k_max {
        return Err(SkipReason::DepthExceedsLimit {
            k: filtered.k,
            k_max,
        });
    }
    Ok(filtered)
}

/// One document's pooled entropies, selection, and diagnostics.
struct DocumentSelection {
    selection: Vec<SignificanceResult>,
    unmatched_nodes: usize,
}

/// Pools concept entropies across a document's sentence graphs and runs the
/// significance test. Graphs with no token scores contribute only
/// unmatched-node diagnostics; a document with no scorable concept selects
/// nothing.
fn select_for_document(
    doc: &eval::DocumentEntry,
    config: &PipelineConfig,
) -> Result<DocumentSelection, PipelineError> {
    let mut pooled: Vec<ConceptEntropy> = Vec::new();
    let mut unmatched_nodes = 0;
    for gws in &doc.graphs {
        if gws.tokens.is_empty() {
            unmatched_nodes += gws.graph.concept_nodes().len();
            continue;
        }
        let scores =
            entropy::score_graph_concepts(&gws.graph, &gws.tokens, &config.boundary_prefix)?;
        unmatched_nodes += scores.unmatched.len();
        pooled.extend(scores.concepts);
    }
    let selection = if pooled.is_empty() {
        Vec::new()
    } else {
        stats::select_significant(&pooled, config.alpha, config.selection_mode)?
    };
    Ok(DocumentSelection {
        selection,
        unmatched_nodes,
    })
}

/// Joins the filtered documents' source texts the same way compressed
/// document texts are joined, so τ compares like with like.
fn joined_source(instance: &QaInstance) -> String {
    instance
        .documents
        .iter()
        .map(|d| d.text.as_str())
        .filter(|t| !t.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

fn ratio_or_zero(original: &str, compressed: &str) -> f64 {
    eval::compression_ratio(original, compressed).unwrap_or(0.0)
}

/// Compresses one prepared instance into its output record.
pub fn compress_instance(
    instance: &QaInstance,
    config: &PipelineConfig,
) -> Result<CompressOutput, PipelineError> {
    let mut per_document = Vec::with_capacity(instance.documents.len());
    let mut doc_outputs = Vec::with_capacity(instance.documents.len());
    for (d, doc) in instance.documents.iter().enumerate() {
        let DocumentSelection {
            selection,
            unmatched_nodes,
        } = select_for_document(doc, config)?;
        let graphs: Vec<crate::penman::AmrGraph> =
            doc.graphs.iter().map(|g| g.graph.clone()).collect();
        let document_id = format!("{}.d{d}", instance.query_id);
        let compressed =
            distill::compress_document(document_id, &graphs, &selection, &doc.text)?;
        doc_outputs.push(CompressDocOutput {
            document_id: compressed.document_id.clone(),
            text: compressed.text.clone(),
            selected_concepts: selection.iter().filter(|s| s.selected).count(),
            dropped_for_length: compressed.dropped_for_length,
            unmatched_nodes,
        });
        per_document.push(compressed);
    }
    let context = distill::compress_context(per_document);
    let tau = ratio_or_zero(&joined_source(instance), &context.text);
    Ok(CompressOutput {
        version: SCHEMA_VERSION,
        query_id: instance.query_id.clone(),
        k: instance.k,
        context: context.text,
        tau,
        documents: doc_outputs,
    })
}

/// Dumps the per-concept audit rows for one prepared instance.
pub fn score_instance(
    instance: &QaInstance,
    config: &PipelineConfig,
) -> Result<Vec<ScoreRow>, PipelineError> {
    let mut rows = Vec::new();
    for (d, doc) in instance.documents.iter().enumerate() {
        let DocumentSelection { selection, .. } = select_for_document(doc, config)?;
        let document_id = format!("{}.d{d}", instance.query_id);
        for s in selection {
            rows.push(ScoreRow {
                version: SCHEMA_VERSION,
                query_id: instance.query_id.clone(),
                document_id: document_id.clone(),
                concept_label: s.concept_label,
                variable: s.variable,
                entropy: s.entropy,
                t_stat: s.t_stat,
                p_value: s.p_value,
                selected: s.selected,
                degenerate: s.degenerate,
            });
        }
    }
    Ok(rows)
}

/// Applies the TF-IDF baseline to one prepared instance. The IDF table is
/// built by the caller over the whole batch's filtered documents.
pub fn tfidf_instance(
    instance: &QaInstance,
    idf: &IdfTable,
    config: &PipelineConfig,
) -> Result<TfidfOutput, PipelineError> {
    let mut documents = Vec::with_capacity(instance.documents.len());
    for (d, doc) in instance.documents.iter().enumerate() {
        let text = if doc.text.split_whitespace().count() == 0 {
            String::new()
        } else {
            tfidf::compress_tfidf(&doc.text, idf, config.keep_fraction)?
        };
        documents.push(TfidfDocOutput {
            document_id: format!("{}.d{d}", instance.query_id),
            text,
        });
    }
    let context = documents
        .iter()
        .map(|d| d.text.as_str())
        .filter(|t| !t.is_empty())
        .collect::<Vec<_>>()
        .join("\n");
    let tau = ratio_or_zero(&joined_source(instance), &context);
    Ok(TfidfOutput {
        version: SCHEMA_VERSION,
        query_id: instance.query_id.clone(),
        k: instance.k,
        context,
        tau,
        documents,
    })
}
