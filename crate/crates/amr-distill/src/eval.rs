//! Evaluation protocol: answer-bearing document filtering, prompt assembly,
//! exact-match scoring, accuracy-vs-K tables, trapezoidal AUC, cross-model
//! spread (σ), method deltas, and the token-level compression ratio τ.
//!
//! The unit of evaluation is a `⟨query, answers, documents⟩` instance whose
//! retrieval depth K is the number of answer-bearing documents kept. LLM
//! generation happens upstream; this module consumes its outputs as
//! prediction records and aggregates them into the report tables.

use crate::entropy::ScoredToken;
use crate::penman::AmrGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Default upper bound on retrieval depth K.
pub const DEFAULT_K_MAX: usize = 10;

/// Errors produced while aggregating evaluation records.
#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    /// No instance fell into the K bucket needed for a table or AUC.
    #[error("no instances in bucket k = {0}")]
    MissingBucket(usize),
    /// A prediction referenced a query id with no gold instance.
    #[error("prediction references unknown query `{0}`")]
    UnresolvedQuery(String),
    /// Standard deviation needs at least two models.
    #[error("need at least 2 models, got {0}")]
    TooFewModels(usize),
    /// Two reports that should align elementwise do not.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// τ is undefined for an empty original text.
    #[error("original text has no tokens")]
    EmptyOriginal,
}

/// How a generation is compared against gold answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchPolicy {
    /// True when a normalized answer occurs anywhere in the normalized
    /// generation. The default.
    #[default]
    Substring,
    /// True only when the normalized generation equals a normalized answer.
    Strict,
}

impl std::str::FromStr for MatchPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "substring" => Ok(MatchPolicy::Substring),
            "strict" => Ok(MatchPolicy::Strict),
            other => Err(format!(
                "unknown match policy `{other}` (expected `substring` or `strict`)"
            )),
        }
    }
}

impl std::fmt::Display for MatchPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchPolicy::Substring => "substring",
            MatchPolicy::Strict => "strict",
        })
    }
}

/// One sentence graph of a document together with the token logprobs of its
/// linearization.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphWithScores {
    pub graph: AmrGraph,
    pub tokens: Vec<ScoredToken>,
}

/// One retrieved document of an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentEntry {
    pub text: String,
    /// Whether the retriever marked this document as answer-bearing.
    pub hasanswer: bool,
    pub graphs: Vec<GraphWithScores>,
}

/// A `⟨query, answers, documents⟩` instance. `k` counts the answer-bearing
/// documents and is maintained by [`filter_hasanswer`].
#[derive(Debug, Clone, PartialEq)]
pub struct QaInstance {
    pub query_id: String,
    pub query: String,
    pub answers: Vec<String>,
    pub documents: Vec<DocumentEntry>,
    pub k: usize,
}

/// An upstream LLM generation for one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub query_id: String,
    pub model_id: String,
    pub method_id: String,
    pub generated: String,
}

/// Accuracy percent per retrieval depth for one (model, method) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyTable {
    pub model_id: String,
    pub method_id: String,
    /// K → accuracy percent. Real tables lie in [0, 100]; Δ tables may be
    /// negative.
    pub acc_by_k: BTreeMap<usize, f64>,
}

/// AUC summary across models for one method. The scalar fields hold the
/// mean over `per_model`; σ is the sample standard deviation across models.
#[derive(Debug, Clone, PartialEq)]
pub struct AucReport {
    pub auc_standard: f64,
    pub auc_long: f64,
    /// model_id → (AUC over the standard interval, AUC over the long one).
    pub per_model: BTreeMap<String, (f64, f64)>,
    pub sigma_standard: f64,
    pub sigma_long: f64,
}

/// Drops documents the retriever did not mark answer-bearing and recomputes
/// k. Callers discard instances whose resulting k is 0 or exceeds k_max.
pub fn filter_hasanswer(instance: QaInstance) -> QaInstance {
    let documents: Vec<DocumentEntry> = instance
        .documents
        .into_iter()
        .filter(|d| d.hasanswer)
        .collect();
    let k = documents.len();
    QaInstance {
        documents,
        k,
        ..instance
    }
}

/// Renders the fixed QA prompt. Byte-deterministic.
pub fn build_prompt(compressed: &str, query: &str) -> String {
    format!("Refer to the following facts to answer the question. Facts: {compressed}. Question: {query}")
}

/// Normalization applied to both sides of a match: lowercase, whitespace
/// collapsed to single spaces, surrounding ASCII punctuation stripped.
fn normalize(s: &str) -> String {
    let lowered = s.to_lowercase();
    let collapsed = lowered.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed
        .trim_matches(|c: char| c.is_ascii_punctuation())
        .to_string()
}

/// Whether a generation counts as correct for any of the gold answers.
pub fn exact_match(generated: &str, answers: &[String], policy: MatchPolicy) -> bool {
    let generated = normalize(generated);
    answers.iter().any(|answer| {
        let answer = normalize(answer);
        match policy {
            MatchPolicy::Substring => !answer.is_empty() && generated.contains(&answer),
            MatchPolicy::Strict => generated == answer,
        }
    })
}

/// Builds the accuracy-per-K table for one (model, method) group of
/// predictions. Every K in `1..=k_max` must have at least one gold
/// instance; an instance with no prediction counts as a miss.
pub fn accuracy_by_k(
    preds: &[PredictionRecord],
    gold: &[QaInstance],
    policy: MatchPolicy,
    k_max: usize,
) -> Result<AccuracyTable, EvalError> {
    let by_id: BTreeMap<&str, &QaInstance> =
        gold.iter().map(|g| (g.query_id.as_str(), g)).collect();
    for pred in preds {
        if !by_id.contains_key(pred.query_id.as_str()) {
            return Err(EvalError::UnresolvedQuery(pred.query_id.clone()));
        }
    }
    let mut generated: BTreeMap<&str, &str> = BTreeMap::new();
    for pred in preds {
        generated
            .entry(pred.query_id.as_str())
            .or_insert(pred.generated.as_str());
    }

    let mut acc_by_k = BTreeMap::new();
    for k in 1..=k_max {
        let bucket: Vec<&QaInstance> = gold.iter().filter(|g| g.k == k).collect();
        if bucket.is_empty() {
            return Err(EvalError::MissingBucket(k));
        }
        let matched = bucket
            .iter()
            .filter(|g| {
                generated
                    .get(g.query_id.as_str())
                    .is_some_and(|text| exact_match(text, &g.answers, policy))
            })
            .count();
        acc_by_k.insert(k, 100.0 * matched as f64 / bucket.len() as f64);
    }

    let (model_id, method_id) = preds
        .first()
        .map(|p| (p.model_id.clone(), p.method_id.clone()))
        .unwrap_or_default();
    Ok(AccuracyTable {
        model_id,
        method_id,
        acc_by_k,
    })
}

/// Trapezoidal area under the accuracy curve over `[lo, hi]` with unit K
/// spacing: `Σ (acc(k) + acc(k+1)) / 2`.
pub fn auc(acc_by_k: &BTreeMap<usize, f64>, interval: (usize, usize)) -> Result<f64, EvalError> {
    let (lo, hi) = interval;
    for k in lo..=hi {
        if !acc_by_k.contains_key(&k) {
            return Err(EvalError::MissingBucket(k));
        }
    }
    Ok((lo..hi)
        .map(|k| (acc_by_k[&k] + acc_by_k[&(k + 1)]) / 2.0)
        .sum())
}

/// Sample (n−1) standard deviation of per-model AUCs.
pub fn sigma_across_models(aucs: &[f64]) -> Result<f64, EvalError> {
    if aucs.len() < 2 {
        return Err(EvalError::TooFewModels(aucs.len()));
    }
    let n = aucs.len() as f64;
    let mean = aucs.iter().sum::<f64>() / n;
    let ss: f64 = aucs.iter().map(|a| (a - mean) * (a - mean)).sum();
    Ok((ss / (n - 1.0)).sqrt())
}

/// Assembles the AUC report for one method from its per-model accuracy
/// tables. σ requires at least two tables.
pub fn auc_report(
    tables: &[AccuracyTable],
    standard: (usize, usize),
    long: (usize, usize),
) -> Result<AucReport, EvalError> {
    let mut per_model = BTreeMap::new();
    for table in tables {
        let s = auc(&table.acc_by_k, standard)?;
        let l = auc(&table.acc_by_k, long)?;
        per_model.insert(table.model_id.clone(), (s, l));
    }
    let s_values: Vec<f64> = per_model.values().map(|v| v.0).collect();
    let l_values: Vec<f64> = per_model.values().map(|v| v.1).collect();
    Ok(AucReport {
        auc_standard: s_values.iter().sum::<f64>() / s_values.len().max(1) as f64,
        auc_long: l_values.iter().sum::<f64>() / l_values.len().max(1) as f64,
        sigma_standard: sigma_across_models(&s_values)?,
        sigma_long: sigma_across_models(&l_values)?,
        per_model,
    })
}

/// Elementwise `ours − vanilla` for accuracy tables. Both must describe the
/// same model over the same K set.
pub fn delta_accuracy(
    ours: &AccuracyTable,
    vanilla: &AccuracyTable,
) -> Result<AccuracyTable, EvalError> {
    if ours.model_id != vanilla.model_id {
        return Err(EvalError::ShapeMismatch(format!(
            "models differ: {} vs {}",
            ours.model_id, vanilla.model_id
        )));
    }
    if ours.acc_by_k.keys().ne(vanilla.acc_by_k.keys()) {
        return Err(EvalError::ShapeMismatch("K sets differ".to_string()));
    }
    let acc_by_k = ours
        .acc_by_k
        .iter()
        .map(|(k, v)| (*k, v - vanilla.acc_by_k[k]))
        .collect();
    Ok(AccuracyTable {
        model_id: ours.model_id.clone(),
        method_id: format!("{}-minus-{}", ours.method_id, vanilla.method_id),
        acc_by_k,
    })
}

/// Elementwise `ours − vanilla` for AUC reports, with σ recomputed from the
/// per-model deltas (not differenced).
pub fn delta_auc(ours: &AucReport, vanilla: &AucReport) -> Result<AucReport, EvalError> {
    if ours.per_model.keys().ne(vanilla.per_model.keys()) {
        return Err(EvalError::ShapeMismatch("model sets differ".to_string()));
    }
    let per_model: BTreeMap<String, (f64, f64)> = ours
        .per_model
        .iter()
        .map(|(m, (s, l))| {
            let (vs, vl) = vanilla.per_model[m];
            (m.clone(), (s - vs, l - vl))
        })
        .collect();
    let s_values: Vec<f64> = per_model.values().map(|v| v.0).collect();
    let l_values: Vec<f64> = per_model.values().map(|v| v.1).collect();
    Ok(AucReport {
        auc_standard: s_values.iter().sum::<f64>() / s_values.len().max(1) as f64,
        auc_long: l_values.iter().sum::<f64>() / l_values.len().max(1) as f64,
        sigma_standard: sigma_across_models(&s_values)?,
        sigma_long: sigma_across_models(&l_values)?,
        per_model,
    })
}

/// Token-level compression ratio τ: compressed whitespace tokens over
/// original whitespace tokens.
pub fn compression_ratio(original: &str, compressed: &str) -> Result<f64, EvalError> {
    let original_tokens = original.split_whitespace().count();
    if original_tokens == 0 {
        return Err(EvalError::EmptyOriginal);
    }
    Ok(compressed.split_whitespace().count() as f64 / original_tokens as f64)
}
