//! Batch front-end wiring the pipeline together: file ingestion,
//! configuration layering, subcommands, and reports.
//!
//! Consumers are scripts, so every subcommand reads line-delimited records,
//! writes line-delimited records, and communicates failure through exit
//! codes: `0` success, `1` schema or I/O error, `2` verification mismatch.
//! A malformed record never aborts a batch — it is logged with its line
//! number, counted, and skipped; counters surface in a stderr summary.
//!
//! Configuration precedence: flags > `AMRD_*` environment > `--config` TOML
//! file > defaults. Records are processed on a bounded worker pool; output
//! order always equals input order.

use crate::config::{ConfigLayer, PipelineConfig};
use crate::eval::{self, MatchPolicy, PredictionRecord, QaInstance};
use crate::pipeline::{self, SkipReason};
use crate::records::{CorpusRecord, SCHEMA_VERSION};
use crate::stats::SelectionMode;
use crate::tables;
use crate::tfidf;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Everything worked.
pub const EXIT_OK: i32 = 0;
/// A schema violation or I/O failure occurred (the batch still completed).
pub const EXIT_SCHEMA_IO: i32 = 1;
/// Golden-table verification found cells outside tolerance.
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser)]
#[command(
    name = "amrd",
    version,
    about = "Entropy-guided compression of retrieved documents into compact fact contexts"
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

/// Flag layer applied on top of defaults, config file, and environment.
#[derive(Args)]
struct Overrides {
    /// TOML config file (lower precedence than environment and flags)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Significance threshold in (0, 1]
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Concept selection: high-only or two-sided
    #[arg(long, global = true, value_parser = SelectionMode::from_str)]
    mode: Option<SelectionMode>,
    /// Subword boundary marker of the upstream tokenizer
    #[arg(long, global = true, value_name = "PREFIX")]
    boundary_prefix: Option<String>,
    /// Answer matching: substring or strict
    #[arg(long, global = true, value_parser = MatchPolicy::from_str)]
    match_policy: Option<MatchPolicy>,
    /// Largest K bucket processed or reported
    #[arg(long, global = true)]
    k_max: Option<usize>,
    /// TF-IDF retention budget in (0, 1]
    #[arg(long, global = true)]
    keep_fraction: Option<f64>,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compress each record's documents into a concept context
    Compress {
        /// Input corpus (JSON lines)
        input: PathBuf,
        /// Output records (JSON lines)
        output: PathBuf,
    },
    /// Dump per-concept entropy, t, p, and selection rows for audit
    Score {
        /// Input corpus (JSON lines)
        input: PathBuf,
        /// Output rows (JSON lines)
        output: PathBuf,
    },
    /// Compress each record's documents with the TF-IDF retention baseline
    Tfidf {
        /// Input corpus (JSON lines)
        input: PathBuf,
        /// Output records (JSON lines)
        output: PathBuf,
    },
    /// Score predictions: accuracy-vs-K tables, AUC, sigma, and deltas
    Eval {
        /// Gold corpus (JSON lines)
        gold: PathBuf,
        /// Prediction records (JSON lines)
        predictions: PathBuf,
        /// Machine-readable report (JSON lines); the table prints to stdout
        output: PathBuf,
    },
    /// Recompute golden metric tables and compare within tolerance
    VerifyTables {
        /// Directory of dataset fixture subdirectories
        fixture_dir: PathBuf,
    },
}

/// Parses arguments, layers configuration, and dispatches. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SCHEMA_IO } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let flags = ConfigLayer {
        alpha: cli.overrides.alpha,
        selection_mode: cli.overrides.mode,
        boundary_prefix: cli.overrides.boundary_prefix.clone(),
        match_policy: cli.overrides.match_policy,
        k_max: cli.overrides.k_max,
        keep_fraction: cli.overrides.keep_fraction,
        interval_standard: None,
        interval_long: None,
        workers: cli.overrides.workers,
    };
    let config =
        match PipelineConfig::load(cli.overrides.config.as_deref(), std::env::vars(), flags) {
            Ok(config) => config,
            Err(e) => {
                eprintln!("amrd: {e}");
                return EXIT_SCHEMA_IO;
            }
        };
    match &cli.command {
        Command::Compress { input, output } => cmd_compress(input, output, &config),
        Command::Score { input, output } => cmd_score(input, output, &config),
        Command::Tfidf { input, output } => cmd_tfidf(input, output, &config),
        Command::Eval {
            gold,
            predictions,
            output,
        } => cmd_eval(gold, predictions, output, &config),
        Command::VerifyTables { fixture_dir } => cmd_verify_tables(fixture_dir, &config),
    }
}

/// Batch bookkeeping surfaced in the stderr summary.
#[derive(Default)]
struct BatchCounters {
    written: usize,
    schema_errors: usize,
    parse_failures: usize,
    skipped_k0: usize,
    skipped_depth: usize,
    record_failures: usize,
}

impl BatchCounters {
    fn summary(&self, subcommand: &str) {
        eprintln!(
            "amrd {subcommand}: {} records written, {} skipped (k = 0), {} skipped (k > k_max), \
             {} graph-parse failures, {} record failures, {} schema errors",
            self.written,
            self.skipped_k0,
            self.skipped_depth,
            self.parse_failures,
            self.record_failures,
            self.schema_errors
        );
    }

    fn exit_code(&self) -> i32 {
        if self.schema_errors > 0 {
            EXIT_SCHEMA_IO
        } else {
            EXIT_OK
        }
    }
}

/// Reads, validates, parses, and filters a corpus file. Schema violations
/// and graph-parse failures are logged with their line number and skipped;
/// K-window exclusions are only counted.
fn read_instances(
    input: &Path,
    k_max: usize,
    counters: &mut BatchCounters,
) -> Result<Vec<QaInstance>, String> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let mut instances = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record = match CorpusRecord::from_line(line) {
            Ok(record) => record,
            Err(e) => {
                eprintln!("{}:{}: {e}", input.display(), i + 1);
                counters.schema_errors += 1;
                continue;
            }
        };
        let instance = match record.into_instance() {
            Ok(instance) => instance,
            Err(e) => {
                eprintln!("{}:{}: {e}", input.display(), i + 1);
                counters.parse_failures += 1;
                continue;
            }
        };
        match pipeline::prepare_instance(instance, k_max) {
            Ok(prepared) => instances.push(prepared),
            Err(SkipReason::NoAnswerBearingDocuments) => counters.skipped_k0 += 1,
            Err(SkipReason::DepthExceedsLimit { .. }) => counters.skipped_depth += 1,
        }
    }
    Ok(instances)
}

/// Runs a closure on a pool bounded to `workers` threads (0 = default).
fn install_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn write_lines(path: &Path, lines: &[String]) -> Result<(), String> {
    let file = std::fs::File::create(path)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut out = std::io::BufWriter::new(file);
    for line in lines {
        writeln!(out, "{line}").map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    out.flush()
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Shared batch driver: maps prepared instances to output lines in parallel
/// (input order preserved), writes them, and prints the summary.
fn run_batch<F>(subcommand: &str, input: &Path, output: &Path, config: &PipelineConfig, f: F) -> i32
where
    F: Fn(&QaInstance) -> Result<Vec<String>, String> + Sync,
{
    let mut counters = BatchCounters::default();
    let instances = match read_instances(input, config.k_max, &mut counters) {
        Ok(instances) => instances,
        Err(message) => {
            eprintln!("amrd {subcommand}: {message}");
            return EXIT_SCHEMA_IO;
        }
    };
    let results: Vec<Result<Vec<String>, String>> =
        install_pool(config.workers, || instances.par_iter().map(&f).collect());
    let mut lines = Vec::with_capacity(results.len());
    for (instance, result) in instances.iter().zip(results) {
        match result {
            Ok(batch) => {
                lines.extend(batch);
                counters.written += 1;
            }
            Err(message) => {
                eprintln!("record {}: {message}", instance.query_id);
                counters.record_failures += 1;
            }
        }
    }
    if let Err(message) = write_lines(output, &lines) {
        eprintln!("amrd {subcommand}: {message}");
        return EXIT_SCHEMA_IO;
    }
    counters.summary(subcommand);
    counters.exit_code()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| format!("serialization: {e}"))
}

/// `compress`: one output record per surviving input record.
pub fn cmd_compress(input: &Path, output: &Path, config: &PipelineConfig) -> i32 {
    run_batch("compress", input, output, config, |instance| {
        let out = pipeline::compress_instance(instance, config).map_err(|e| e.to_string())?;
        Ok(vec![to_json(&out)?])
    })
}

/// `score`: one audit row per concept.
pub fn cmd_score(input: &Path, output: &Path, config: &PipelineConfig) -> i32 {
    run_batch("score", input, output, config, |instance| {
        let rows = pipeline::score_instance(instance, config).map_err(|e| e.to_string())?;
        rows.iter().map(to_json).collect()
    })
}

/// `tfidf`: the retention baseline, IDF built over the whole batch's
/// filtered documents.
pub fn cmd_tfidf(input: &Path, output: &Path, config: &PipelineConfig) -> i32 {
    let mut counters = BatchCounters::default();
    let instances = match read_instances(input, config.k_max, &mut counters) {
        Ok(instances) => instances,
        Err(message) => {
            eprintln!("amrd tfidf: {message}");
            return EXIT_SCHEMA_IO;
        }
    };
    let corpus: Vec<&str> = instances
        .iter()
        .flat_map(|i| i.documents.iter().map(|d| d.text.as_str()))
        .collect();
    let mut lines = Vec::with_capacity(instances.len());
    if !corpus.is_empty() {
        let idf = match tfidf::build_idf(&corpus) {
            Ok(idf) => idf,
            Err(e) => {
                eprintln!("amrd tfidf: {e}");
                return EXIT_SCHEMA_IO;
            }
        };
        let results: Vec<Result<String, String>> = install_pool(config.workers, || {
            instances
                .par_iter()
                .map(|instance| {
                    let out = pipeline::tfidf_instance(instance, &idf, config)
                        .map_err(|e| e.to_string())?;
                    to_json(&out)
                })
                .collect()
        });
        for (instance, result) in instances.iter().zip(results) {
            match result {
                Ok(line) => {
                    lines.push(line);
                    counters.written += 1;
                }
                Err(message) => {
                    eprintln!("record {}: {message}", instance.query_id);
                    counters.record_failures += 1;
                }
            }
        }
    }
    if let Err(message) = write_lines(output, &lines) {
        eprintln!("amrd tfidf: {message}");
        return EXIT_SCHEMA_IO;
    }
    counters.summary("tfidf");
    counters.exit_code()
}

/// One machine-readable accuracy record per (model, method).
#[derive(Serialize)]
struct AccuracyRecord<'a> {
    version: u32,
    record: &'static str,
    model_id: &'a str,
    method_id: &'a str,
    acc_by_k: &'a BTreeMap<usize, f64>,
    auc_standard: f64,
    auc_long: f64,
}

/// One machine-readable summary record per method (aggregate or delta).
#[derive(Serialize)]
struct SummaryRecord<'a> {
    version: u32,
    record: &'static str,
    method_id: &'a str,
    auc_standard: f64,
    /// Omitted (null) when fewer than two models were evaluated.
    sigma_standard: Option<f64>,
    auc_long: f64,
    sigma_long: Option<f64>,
    per_model: &'a BTreeMap<String, (f64, f64)>,
}

fn sigma_opt(values: &[f64]) -> Option<f64> {
    eval::sigma_across_models(values).ok()
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len().max(1) as f64
}

fn fmt_sigma(value: Option<f64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

/// Builds and prints one summary section; returns its machine-readable line.
fn summarize_method(
    record: &'static str,
    method_id: &str,
    per_model: &BTreeMap<String, (f64, f64)>,
) -> Result<String, String> {
    let s_values: Vec<f64> = per_model.values().map(|v| v.0).collect();
    let l_values: Vec<f64> = per_model.values().map(|v| v.1).collect();
    let (sigma_s, sigma_l) = (sigma_opt(&s_values), sigma_opt(&l_values));
    println!(
        "{method_id:<16} {:>10.2} {:>8} {:>10.2} {:>8}",
        mean(&s_values),
        fmt_sigma(sigma_s),
        mean(&l_values),
        fmt_sigma(sigma_l)
    );
    to_json(&SummaryRecord {
        version: SCHEMA_VERSION,
        record,
        method_id,
        auc_standard: mean(&s_values),
        sigma_standard: sigma_s,
        auc_long: mean(&l_values),
        sigma_long: sigma_l,
        per_model,
    })
}

/// `eval`: accuracy tables, AUC aggregates, and deltas versus the vanilla
/// method, as a human-readable report on stdout plus machine-readable
/// records in the output file.
pub fn cmd_eval(gold: &Path, predictions: &Path, output: &Path, config: &PipelineConfig) -> i32 {
    let mut counters = BatchCounters::default();

    let gold_text = match std::fs::read_to_string(gold) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("amrd eval: cannot read {}: {e}", gold.display());
            return EXIT_SCHEMA_IO;
        }
    };
    let mut instances = Vec::new();
    for (i, line) in gold_text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match CorpusRecord::from_line(line).and_then(CorpusRecord::into_instance) {
            Ok(instance) => instances.push(instance),
            Err(e) => {
                eprintln!("{}:{}: {e}", gold.display(), i + 1);
                counters.schema_errors += 1;
            }
        }
    }

    let pred_text = match std::fs::read_to_string(predictions) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("amrd eval: cannot read {}: {e}", predictions.display());
            return EXIT_SCHEMA_IO;
        }
    };
    let mut groups: BTreeMap<(String, String), Vec<PredictionRecord>> = BTreeMap::new();
    for (i, line) in pred_text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<PredictionRecord>(line) {
            Ok(pred) => groups
                .entry((pred.model_id.clone(), pred.method_id.clone()))
                .or_default()
                .push(pred),
            Err(e) => {
                eprintln!("{}:{}: schema: {e}", predictions.display(), i + 1);
                counters.schema_errors += 1;
            }
        }
    }
    if instances.is_empty() || groups.is_empty() {
        eprintln!("amrd eval: nothing to evaluate (no gold instances or no predictions)");
        return EXIT_SCHEMA_IO;
    }

    // Per-(model, method) accuracy tables; any unresolved id or missing K
    // bucket is a hard error.
    let mut records = Vec::new();
    let mut per_method: BTreeMap<String, BTreeMap<String, (f64, f64)>> = BTreeMap::new();
    println!("accuracy percent by k (k = 1..={})", config.k_max);
    let header: Vec<String> = (1..=config.k_max).map(|k| format!("{k:>6}")).collect();
    println!("{:<10} {:<16} {}", "model", "method", header.join(" "));
    for ((model_id, method_id), preds) in &groups {
        let table = match eval::accuracy_by_k(preds, &instances, config.match_policy, config.k_max)
        {
            Ok(table) => table,
            Err(e) => {
                eprintln!("amrd eval: {model_id}/{method_id}: {e}");
                return EXIT_SCHEMA_IO;
            }
        };
        let cells: Vec<String> = table.acc_by_k.values().map(|v| format!("{v:>6.2}")).collect();
        println!("{model_id:<10} {method_id:<16} {}", cells.join(" "));
        let (standard, long) = (
            (config.interval_standard[0], config.interval_standard[1]),
            (config.interval_long[0], config.interval_long[1]),
        );
        let auc_s = eval::auc(&table.acc_by_k, standard).expect("buckets verified complete");
        let auc_l = eval::auc(&table.acc_by_k, long).expect("buckets verified complete");
        match to_json(&AccuracyRecord {
            version: SCHEMA_VERSION,
            record: "accuracy",
            model_id,
            method_id,
            acc_by_k: &table.acc_by_k,
            auc_standard: auc_s,
            auc_long: auc_l,
        }) {
            Ok(line) => records.push(line),
            Err(message) => {
                eprintln!("amrd eval: {message}");
                return EXIT_SCHEMA_IO;
            }
        }
        per_method
            .entry(method_id.clone())
            .or_default()
            .insert(model_id.clone(), (auc_s, auc_l));
    }

    println!();
    println!(
        "auc per method (mean over models; intervals [{},{}] and [{},{}])",
        config.interval_standard[0],
        config.interval_standard[1],
        config.interval_long[0],
        config.interval_long[1]
    );
    println!(
        "{:<16} {:>10} {:>8} {:>10} {:>8}",
        "method", "standard", "sigma", "long", "sigma"
    );
    let single_model = per_method.values().any(|models| models.len() < 2);
    for (method_id, per_model) in &per_method {
        match summarize_method("auc-summary", method_id, per_model) {
            Ok(line) => records.push(line),
            Err(message) => {
                eprintln!("amrd eval: {message}");
                return EXIT_SCHEMA_IO;
            }
        }
    }
    if single_model {
        println!("note: sigma needs at least two models; omitted");
    }

    if let Some(vanilla) = per_method.get("vanilla").cloned() {
        println!();
        println!("delta vs vanilla");
        println!(
            "{:<16} {:>10} {:>8} {:>10} {:>8}",
            "method", "standard", "sigma", "long", "sigma"
        );
        for (method_id, per_model) in &per_method {
            if method_id == "vanilla" || per_model.keys().ne(vanilla.keys()) {
                continue;
            }
            let deltas: BTreeMap<String, (f64, f64)> = per_model
                .iter()
                .map(|(m, (s, l))| {
                    let (vs, vl) = vanilla[m];
                    (m.clone(), (s - vs, l - vl))
                })
                .collect();
            match summarize_method("delta-vs-vanilla", method_id, &deltas) {
                Ok(line) => records.push(line),
                Err(message) => {
                    eprintln!("amrd eval: {message}");
                    return EXIT_SCHEMA_IO;
                }
            }
        }
    }

    if let Err(message) = write_lines(output, &records) {
        eprintln!("amrd eval: {message}");
        return EXIT_SCHEMA_IO;
    }
    if counters.schema_errors > 0 {
        eprintln!(
            "amrd eval: completed with {} schema errors",
            counters.schema_errors
        );
    }
    counters.exit_code()
}

/// `verify-tables`: replays every dataset fixture under the directory and
/// lists any cell outside tolerance.
pub fn cmd_verify_tables(fixture_dir: &Path, config: &PipelineConfig) -> i32 {
    let standard = (config.interval_standard[0], config.interval_standard[1]);
    let long = (config.interval_long[0], config.interval_long[1]);
    let dirs = match tables::dataset_dirs(fixture_dir) {
        Ok(dirs) => dirs,
        Err(e) => {
            eprintln!("amrd verify-tables: {e}");
            return EXIT_SCHEMA_IO;
        }
    };
    if dirs.is_empty() {
        eprintln!(
            "amrd verify-tables: no dataset directories under {}",
            fixture_dir.display()
        );
        return EXIT_SCHEMA_IO;
    }
    let mut mismatched = false;
    for dir in &dirs {
        match tables::replay_dir(dir, standard, long) {
            Ok(report) => {
                if report.passed() {
                    println!(
                        "{}: all {} cells within ±{}",
                        report.dataset,
                        report.cells_checked,
                        tables::TOLERANCE
                    );
                } else {
                    mismatched = true;
                    println!(
                        "{}: {} of {} cells outside ±{}",
                        report.dataset,
                        report.mismatches.len(),
                        report.cells_checked,
                        tables::TOLERANCE
                    );
                    for mismatch in &report.mismatches {
                        println!("  {mismatch}");
                    }
                }
            }
            Err(e) => {
                eprintln!("amrd verify-tables: {e}");
                return EXIT_SCHEMA_IO;
            }
        }
    }
    if mismatched {
        EXIT_VERIFY
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_root() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/tables")
    }

    fn boy_line() -> String {
        serde_json::json!({
            "version": 1,
            "query_id": "q1",
            "query": "Who ran?",
            "answers": ["boy"],
            "documents": [{
                "text": "The boy ran.",
                "hasanswer": true,
                "graphs": [{
                    "penman": "(b / boy)",
                    "tokens": [{"text": "Ġboy", "logprob": -0.7}]
                }]
            }]
        })
        .to_string()
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run(["amrd", "--help"]), EXIT_OK);
        assert_eq!(run(["amrd", "--version"]), EXIT_OK);
    }

    #[test]
    fn unknown_flag_exits_one() {
        assert_eq!(run(["amrd", "--no-such-flag", "compress", "a", "b"]), 1);
    }

    #[test]
    fn invalid_alpha_is_rejected_at_load() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.jsonl");
        let output = dir.path().join("out.jsonl");
        std::fs::write(&input, boy_line()).unwrap();
        let code = run([
            "amrd",
            "--alpha",
            "2.0",
            "compress",
            input.to_str().unwrap(),
            output.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_SCHEMA_IO);
    }

    #[test]
    fn compress_writes_one_record_and_succeeds() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.jsonl");
        let output = dir.path().join("out.jsonl");
        std::fs::write(&input, boy_line()).unwrap();
        let config = PipelineConfig::default();
        assert_eq!(cmd_compress(&input, &output, &config), EXIT_OK);
        let text = std::fs::read_to_string(&output).unwrap();
        let record: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(record["context"], "boy");
        assert_eq!(record["k"], 1);
    }

    #[test]
    fn schema_violation_exits_one_but_batch_completes() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.jsonl");
        let output = dir.path().join("out.jsonl");
        std::fs::write(&input, format!("not json\n{}\n", boy_line())).unwrap();
        let config = PipelineConfig::default();
        assert_eq!(cmd_compress(&input, &output, &config), EXIT_SCHEMA_IO);
        // The valid record still produced output.
        let text = std::fs::read_to_string(&output).unwrap();
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn unparsable_graph_is_skipped_with_zero_exit() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.jsonl");
        let output = dir.path().join("out.jsonl");
        let bad = serde_json::json!({
            "version": 1,
            "query_id": "q9",
            "query": "q",
            "answers": ["a"],
            "documents": [{
                "text": "text",
                "hasanswer": true,
                "graphs": [{"penman": "(b / boy", "tokens": []}]
            }]
        });
        std::fs::write(&input, format!("{bad}\n{}\n", boy_line())).unwrap();
        let config = PipelineConfig::default();
        assert_eq!(cmd_compress(&input, &output, &config), EXIT_OK);
        let text = std::fs::read_to_string(&output).unwrap();
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn empty_document_list_yields_empty_output_and_zero_exit() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.jsonl");
        let output = dir.path().join("out.jsonl");
        let record = serde_json::json!({
            "version": 1,
            "query_id": "q2",
            "query": "q",
            "answers": ["a"],
            "documents": []
        });
        std::fs::write(&input, record.to_string()).unwrap();
        let config = PipelineConfig::default();
        assert_eq!(cmd_score(&input, &output, &config), EXIT_OK);
        assert_eq!(std::fs::read_to_string(&output).unwrap(), "");
    }

    #[test]
    fn tfidf_keep_fraction_one_is_identity() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.jsonl");
        let output = dir.path().join("out.jsonl");
        std::fs::write(&input, boy_line()).unwrap();
        let config = PipelineConfig { keep_fraction: 1.0, ..PipelineConfig::default() };
        assert_eq!(cmd_tfidf(&input, &output, &config), EXIT_OK);
        let text = std::fs::read_to_string(&output).unwrap();
        let record: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(record["context"], "The boy ran.");
    }

    #[test]
    fn verify_tables_passes_on_shipped_fixtures() {
        let config = PipelineConfig::default();
        assert_eq!(cmd_verify_tables(&fixture_root(), &config), EXIT_OK);
    }

    #[test]
    fn verify_tables_missing_dir_exits_one() {
        let config = PipelineConfig::default();
        assert_eq!(
            cmd_verify_tables(Path::new("/nonexistent"), &config),
            EXIT_SCHEMA_IO
        );
    }

    fn eval_fixture(dir: &Path) -> (PathBuf, PathBuf) {
        // Ten queries, one per K bucket, all with answer "paris".
        let gold = dir.join("gold.jsonl");
        let mut lines = Vec::new();
        for k in 1..=10 {
            let docs: Vec<serde_json::Value> = (0..k)
                .map(|_| {
                    serde_json::json!({
                        "text": "Paris is the capital.",
                        "hasanswer": true,
                        "graphs": []
                    })
                })
                .collect();
            lines.push(
                serde_json::json!({
                    "version": 1,
                    "query_id": format!("q{k}"),
                    "query": "capital?",
                    "answers": ["paris"],
                    "documents": docs
                })
                .to_string(),
            );
        }
        std::fs::write(&gold, lines.join("\n")).unwrap();

        // One model: odd buckets answered correctly.
        let preds = dir.join("preds.jsonl");
        let mut lines = Vec::new();
        for k in 1..=10 {
            let answer = if k % 2 == 1 { "It is Paris." } else { "dunno" };
            lines.push(
                serde_json::json!({
                    "query_id": format!("q{k}"),
                    "model_id": "m-1",
                    "method_id": "ours",
                    "generated": answer
                })
                .to_string(),
            );
        }
        std::fs::write(&preds, lines.join("\n")).unwrap();
        (gold, preds)
    }

    #[test]
    fn eval_single_model_omits_sigma() {
        let dir = tempfile::tempdir().unwrap();
        let (gold, preds) = eval_fixture(dir.path());
        let output = dir.path().join("report.jsonl");
        let config = PipelineConfig::default();
        assert_eq!(cmd_eval(&gold, &preds, &output, &config), EXIT_OK);
        let text = std::fs::read_to_string(&output).unwrap();
        let mut saw_summary = false;
        for line in text.lines() {
            let record: serde_json::Value = serde_json::from_str(line).unwrap();
            if record["record"] == "auc-summary" {
                saw_summary = true;
                assert!(record["sigma_standard"].is_null());
            }
        }
        assert!(saw_summary);
    }

    #[test]
    fn eval_unresolved_prediction_exits_one() {
        let dir = tempfile::tempdir().unwrap();
        let (gold, preds) = eval_fixture(dir.path());
        let stray = serde_json::json!({
            "query_id": "missing",
            "model_id": "m-1",
            "method_id": "ours",
            "generated": "x"
        });
        let mut text = std::fs::read_to_string(&preds).unwrap();
        text.push('\n');
        text.push_str(&stray.to_string());
        std::fs::write(&preds, text).unwrap();
        let output = dir.path().join("report.jsonl");
        let config = PipelineConfig::default();
        assert_eq!(cmd_eval(&gold, &preds, &output, &config), EXIT_SCHEMA_IO);
    }

    #[test]
    fn eval_reports_delta_against_vanilla() {
        let dir = tempfile::tempdir().unwrap();
        let (gold, preds) = eval_fixture(dir.path());
        // Add a vanilla run for the same model that gets everything right.
        let mut text = std::fs::read_to_string(&preds).unwrap();
        for k in 1..=10 {
            let vanilla = serde_json::json!({
                "query_id": format!("q{k}"),
                "model_id": "m-1",
                "method_id": "vanilla",
                "generated": "paris"
            });
            text.push('\n');
            text.push_str(&vanilla.to_string());
        }
        std::fs::write(&preds, text).unwrap();
        let output = dir.path().join("report.jsonl");
        let config = PipelineConfig::default();
        assert_eq!(cmd_eval(&gold, &preds, &output, &config), EXIT_OK);
        let report = std::fs::read_to_string(&output).unwrap();
        let delta: Vec<serde_json::Value> = report
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .filter(|r: &serde_json::Value| r["record"] == "delta-vs-vanilla")
            .collect();
        assert_eq!(delta.len(), 1);
        assert_eq!(delta[0]["method_id"], "ours");
        // Odd-bucket accuracy 100, even 0 vs vanilla all-100: AUC delta over
        // [1,10] is -(0+100)/2 × 9 segments with alternating means = -450.
        assert!((delta[0]["auc_standard"].as_f64().unwrap() + 450.0).abs() < 1e-9);
    }
}
