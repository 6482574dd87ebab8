//! Golden-table replay: recompute every AUC, σ, and Δ from the shipped
//! accuracy grids and compare them to the published values.
//!
//! A dataset directory holds three tab-separated files:
//!
//! * `accuracy.tsv` — `method  model  k1..k10` accuracy percent rows;
//! * `expected_auc.tsv` — `method  interval  <per-model AUC…>  sigma`,
//!   with `interval` ∈ {standard, long} and a `delta` pseudo-method holding
//!   the published ours−vanilla row;
//! * `expected_ablation.tsv` — `alpha  kind  <per-model values…>` where
//!   `kind` ∈ {standard, long, delta-standard, delta-long}; delta kinds are
//!   relative to the default-threshold (`ours`) run.
//!
//! Lines starting with `#` are comments. Every published value must be
//! reproduced within [`TOLERANCE`] (the rounding budget of two-decimal
//! accuracy inputs); mismatches are collected per cell, never panicked.

use crate::eval::{auc, sigma_across_models};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

/// Reproduction tolerance for values derived from two-decimal inputs.
pub const TOLERANCE: f64 = 0.02;

/// Canonical backbone order of the fixture columns.
pub const MODEL_ORDER: [&str; 10] = [
    "g-1.3", "g-2.7", "o-1.3", "o-2.7", "b-560", "b-7b1", "l-13", "l3.1-8", "ds-v2", "q3-32",
];

/// Errors raised while loading fixture files.
#[derive(Debug, Error)]
pub enum TablesError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },
}

/// One published AUC row: per-model values plus the cross-model σ.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedAucRow {
    pub method: String,
    /// "standard" or "long".
    pub interval: String,
    pub per_model: Vec<f64>,
    pub sigma: f64,
}

/// One published ablation row.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationRow {
    pub alpha: String,
    /// "standard", "long", "delta-standard", or "delta-long".
    pub kind: String,
    pub per_model: Vec<f64>,
}

/// A dataset's full fixture set.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFixture {
    pub name: String,
    /// method → model → accuracy percent at k = 1..=10.
    pub accuracy: BTreeMap<String, BTreeMap<String, Vec<f64>>>,
    pub expected_auc: Vec<ExpectedAucRow>,
    pub expected_ablation: Vec<AblationRow>,
}

/// One cell that failed to reproduce.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub table: String,
    pub row: String,
    pub interval: String,
    /// Model column, or "sigma" for the spread cell.
    pub column: String,
    pub expected: f64,
    pub computed: f64,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} {} {}: expected {:.2}, computed {:.4}",
            self.table, self.row, self.interval, self.column, self.expected, self.computed
        )
    }
}

/// Outcome of replaying one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplayReport {
    pub dataset: String,
    pub cells_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// (method, interval) → per-model AUC recomputed from the grid, in
    /// [`MODEL_ORDER`].
    pub computed_auc: BTreeMap<(String, String), Vec<f64>>,
    /// Recomputed ablation deltas vs the default run, keyed by
    /// (alpha, "delta-standard" | "delta-long").
    pub computed_ablation_delta: BTreeMap<(String, String), Vec<f64>>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn read_rows(path: &Path, expect_cols: usize) -> Result<Vec<Vec<String>>, TablesError> {
    let text = std::fs::read_to_string(path).map_err(|source| TablesError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line.split('\t').map(str::to_string).collect();
        if fields.len() != expect_cols {
            return Err(TablesError::Format {
                path: path.display().to_string(),
                line: i + 1,
                message: format!("expected {expect_cols} columns, found {}", fields.len()),
            });
        }
        rows.push(fields);
    }
    Ok(rows)
}

fn parse_floats(
    fields: &[String],
    path: &Path,
    line_hint: &str,
) -> Result<Vec<f64>, TablesError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<f64>().map_err(|_| TablesError::Format {
                path: path.display().to_string(),
                line: 0,
                message: format!("row {line_hint}: bad number `{f}`"),
            })
        })
        .collect()
}

/// Loads the three fixture files of one dataset directory.
pub fn load_dataset(dir: &Path) -> Result<DatasetFixture, TablesError> {
    let name = dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| dir.display().to_string());

    let acc_path = dir.join("accuracy.tsv");
    let mut accuracy: BTreeMap<String, BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    for row in read_rows(&acc_path, 12)? {
        let values = parse_floats(&row[2..], &acc_path, &format!("{} {}", row[0], row[1]))?;
        accuracy
            .entry(row[0].clone())
            .or_default()
            .insert(row[1].clone(), values);
    }
    for (method, models) in &accuracy {
        for model in MODEL_ORDER {
            if !models.contains_key(model) {
                return Err(TablesError::Format {
                    path: acc_path.display().to_string(),
                    line: 0,
                    message: format!("method {method} missing model {model}"),
                });
            }
        }
    }

    let auc_path = dir.join("expected_auc.tsv");
    let mut expected_auc = Vec::new();
    for row in read_rows(&auc_path, 13)? {
        let values = parse_floats(&row[2..], &auc_path, &format!("{} {}", row[0], row[1]))?;
        expected_auc.push(ExpectedAucRow {
            method: row[0].clone(),
            interval: row[1].clone(),
            per_model: values[..10].to_vec(),
            sigma: values[10],
        });
    }

    let abl_path = dir.join("expected_ablation.tsv");
    let mut expected_ablation = Vec::new();
    for row in read_rows(&abl_path, 12)? {
        let values = parse_floats(&row[2..], &abl_path, &format!("{} {}", row[0], row[1]))?;
        expected_ablation.push(AblationRow {
            alpha: row[0].clone(),
            kind: row[1].clone(),
            per_model: values,
        });
    }

    Ok(DatasetFixture {
        name,
        accuracy,
        expected_auc,
        expected_ablation,
    })
}

fn curve(values: &[f64]) -> BTreeMap<usize, f64> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1, *v))
        .collect()
}

fn interval_for(name: &str, standard: (usize, usize), long: (usize, usize)) -> (usize, usize) {
    if name == "standard" || name == "delta-standard" {
        standard
    } else {
        long
    }
}

/// Recomputes a method's per-model AUCs over one interval from the grid.
fn compute_method_auc(
    fixture: &DatasetFixture,
    method: &str,
    interval: (usize, usize),
) -> Option<Vec<f64>> {
    let models = fixture.accuracy.get(method)?;
    MODEL_ORDER
        .iter()
        .map(|m| auc(&curve(&models[*m]), interval).ok())
        .collect()
}

/// Replays one dataset: recomputes every AUC, σ, Δ, and ablation cell and
/// compares against the published rows.
pub fn replay(
    fixture: &DatasetFixture,
    standard: (usize, usize),
    long: (usize, usize),
) -> ReplayReport {
    let mut report = ReplayReport {
        dataset: fixture.name.clone(),
        cells_checked: 0,
        mismatches: Vec::new(),
        computed_auc: BTreeMap::new(),
        computed_ablation_delta: BTreeMap::new(),
    };

    let check = |table: &str,
                     row: &str,
                     interval: &str,
                     column: &str,
                     expected: f64,
                     computed: f64,
                     report: &mut ReplayReport| {
        report.cells_checked += 1;
        if (expected - computed).abs() > TOLERANCE {
            report.mismatches.push(Mismatch {
                table: table.to_string(),
                row: row.to_string(),
                interval: interval.to_string(),
                column: column.to_string(),
                expected,
                computed,
            });
        }
    };

    for row in &fixture.expected_auc {
        let span = interval_for(&row.interval, standard, long);
        let computed = if row.method == "delta" {
            let ours = compute_method_auc(fixture, "ours", span);
            let vanilla = compute_method_auc(fixture, "vanilla", span);
            match (ours, vanilla) {
                (Some(o), Some(v)) => o.iter().zip(&v).map(|(a, b)| a - b).collect(),
                _ => continue,
            }
        } else {
            match compute_method_auc(fixture, &row.method, span) {
                Some(values) => values,
                None => continue,
            }
        };
        for (i, model) in MODEL_ORDER.iter().enumerate() {
            check(
                "auc",
                &row.method,
                &row.interval,
                model,
                row.per_model[i],
                computed[i],
                &mut report,
            );
        }
        if let Ok(sigma) = sigma_across_models(&computed) {
            check(
                "auc",
                &row.method,
                &row.interval,
                "sigma",
                row.sigma,
                sigma,
                &mut report,
            );
        }
        report
            .computed_auc
            .insert((row.method.clone(), row.interval.clone()), computed);
    }

    for row in &fixture.expected_ablation {
        let span = interval_for(&row.kind, standard, long);
        let method = format!("alpha-{}", row.alpha);
        let Some(sweep) = compute_method_auc(fixture, &method, span) else {
            continue;
        };
        let computed: Vec<f64> = if row.kind.starts_with("delta-") {
            let Some(ours) = compute_method_auc(fixture, "ours", span) else {
                continue;
            };
            sweep.iter().zip(&ours).map(|(a, b)| a - b).collect()
        } else {
            sweep
        };
        for (i, model) in MODEL_ORDER.iter().enumerate() {
            check(
                "ablation",
                &row.alpha,
                &row.kind,
                model,
                row.per_model[i],
                computed[i],
                &mut report,
            );
        }
        if row.kind.starts_with("delta-") {
            report
                .computed_ablation_delta
                .insert((row.alpha.clone(), row.kind.clone()), computed);
        }
    }

    report
}

/// Loads and replays one dataset directory.
pub fn replay_dir(
    dir: &Path,
    standard: (usize, usize),
    long: (usize, usize),
) -> Result<ReplayReport, TablesError> {
    Ok(replay(&load_dataset(dir)?, standard, long))
}

/// Finds the dataset subdirectories of a fixture root (those containing
/// `accuracy.tsv`), sorted by name.
pub fn dataset_dirs(root: &Path) -> Result<Vec<std::path::PathBuf>, TablesError> {
    let entries = std::fs::read_dir(root).map_err(|source| TablesError::Io {
        path: root.display().to_string(),
        source,
    })?;
    let mut dirs: Vec<std::path::PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("accuracy.tsv").is_file())
        .collect();
    dirs.sort();
    Ok(dirs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_root() -> std::path::PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/tables")
    }

    #[test]
    fn shipped_datasets_are_discovered() {
        let dirs = dataset_dirs(&fixture_root()).unwrap();
        let names: Vec<String> = dirs
            .iter()
            .filter_map(|d| d.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect();
        assert_eq!(names, vec!["entityquestions", "popqa"]);
    }

    #[test]
    fn loads_grid_with_all_methods_and_models() {
        let fixture = load_dataset(&fixture_root().join("popqa")).unwrap();
        assert_eq!(fixture.accuracy.len(), 11); // 7 methods + 4 sweeps
        for models in fixture.accuracy.values() {
            assert_eq!(models.len(), 10);
            for curve in models.values() {
                assert_eq!(curve.len(), 10);
            }
        }
        assert_eq!(fixture.expected_auc.len(), 16); // (7 methods + delta) × 2
        assert_eq!(fixture.expected_ablation.len(), 16); // 4 alphas × 4 kinds
    }

    #[test]
    fn popqa_replays_clean() {
        let report = replay_dir(&fixture_root().join("popqa"), (1, 10), (6, 10)).unwrap();
        assert!(
            report.passed(),
            "unexpected mismatches: {:?}",
            report.mismatches
        );
        // 16 AUC rows × 11 cells + 16 ablation rows × 10 cells.
        assert_eq!(report.cells_checked, 16 * 11 + 16 * 10);
    }

    #[test]
    fn entityquestions_replays_clean() {
        let report =
            replay_dir(&fixture_root().join("entityquestions"), (1, 10), (6, 10)).unwrap();
        assert!(
            report.passed(),
            "unexpected mismatches: {:?}",
            report.mismatches
        );
    }

    #[test]
    fn anchor_values_reproduce() {
        let report = replay_dir(&fixture_root().join("popqa"), (1, 10), (6, 10)).unwrap();
        let vanilla_s = &report.computed_auc[&("vanilla".to_string(), "standard".to_string())];
        assert!((vanilla_s[0] - 553.32).abs() <= TOLERANCE); // g-1.3
        let vanilla_l = &report.computed_auc[&("vanilla".to_string(), "long".to_string())];
        assert!((vanilla_l[0] - 262.07).abs() <= TOLERANCE);
        let ours_l = &report.computed_auc[&("ours".to_string(), "long".to_string())];
        assert!((ours_l[9] - 191.09).abs() <= TOLERANCE); // q3-32
        let sigma = sigma_across_models(vanilla_s).unwrap();
        assert!((sigma - 119.63).abs() <= TOLERANCE);
        let delta_s = &report.computed_auc[&("delta".to_string(), "standard".to_string())];
        assert!((delta_s[0] - 47.30).abs() <= TOLERANCE);
    }

    #[test]
    fn perturbing_one_cell_fails_only_that_row() {
        let mut fixture = load_dataset(&fixture_root().join("popqa")).unwrap();
        let cell = fixture
            .accuracy
            .get_mut("tfidf")
            .unwrap()
            .get_mut("o-2.7")
            .unwrap();
        cell[4] += 1.0;
        let report = replay(&fixture, (1, 10), (6, 10));
        assert!(!report.passed());
        // k = 5 sits inside [1, 10] only, so damage stays in the standard
        // tfidf row: its o-2.7 cell for sure, possibly its sigma cell.
        for m in &report.mismatches {
            assert_eq!(m.row, "tfidf");
            assert_eq!(m.interval, "standard");
            assert!(m.column == "o-2.7" || m.column == "sigma");
        }
        assert!(report.mismatches.iter().any(|m| m.column == "o-2.7"));
    }

    #[test]
    fn ablation_deltas_are_negative_on_standard_interval() {
        let report = replay_dir(&fixture_root().join("popqa"), (1, 10), (6, 10)).unwrap();
        for ((alpha, kind), values) in &report.computed_ablation_delta {
            if kind == "delta-standard" {
                assert!(
                    values.iter().all(|v| *v < 0.0),
                    "alpha {alpha}: {values:?}"
                );
            }
        }
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_dataset(dir.path()),
            Err(TablesError::Io { .. })
        ));
    }

    #[test]
    fn ragged_row_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("accuracy.tsv"), "vanilla\tg-1.3\t50.0\n").unwrap();
        match load_dataset(dir.path()) {
            Err(TablesError::Format { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected format error, got {other:?}"),
        }
    }
}
