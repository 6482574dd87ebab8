//! Score predictions against gold answers: accuracy-vs-K tables, trapezoidal
//! AUC over both intervals, cross-model sigma, and deltas versus vanilla.
//!
//! ```sh
//! cargo run --example evaluate
//! ```

use amr_distill::eval::{
    accuracy_by_k, auc_report, delta_auc, MatchPolicy, PredictionRecord, QaInstance,
};
use amr_distill::records::CorpusRecord;
use std::collections::BTreeMap;
use std::path::Path;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/eval");
    let gold: Vec<QaInstance> = std::fs::read_to_string(root.join("gold.jsonl"))
        .expect("gold fixture")
        .lines()
        .map(|l| {
            CorpusRecord::from_line(l)
                .and_then(CorpusRecord::into_instance)
                .expect("valid gold record")
        })
        .collect();
    let mut groups: BTreeMap<(String, String), Vec<PredictionRecord>> = BTreeMap::new();
    for line in std::fs::read_to_string(root.join("predictions.jsonl"))
        .expect("prediction fixture")
        .lines()
    {
        let pred: PredictionRecord = serde_json::from_str(line).expect("valid prediction");
        groups
            .entry((pred.model_id.clone(), pred.method_id.clone()))
            .or_default()
            .push(pred);
    }

    let mut tables_by_method: BTreeMap<String, Vec<_>> = BTreeMap::new();
    for ((model, method), preds) in &groups {
        let table = accuracy_by_k(preds, &gold, MatchPolicy::Substring, 10).unwrap();
        let cells: Vec<String> = table.acc_by_k.values().map(|v| format!("{v:>3.0}")).collect();
        println!("{model} {method:<8} acc: {}", cells.join(" "));
        tables_by_method.entry(method.clone()).or_default().push(table);
    }

    println!();
    let mut reports = BTreeMap::new();
    for (method, tables) in &tables_by_method {
        let report = auc_report(tables, (1, 10), (6, 10)).unwrap();
        println!(
            "{method:<8} auc[1,10] = {:>6.1} (sigma {:>6.1})   auc[6,10] = {:>6.1} (sigma {:>6.1})",
            report.auc_standard, report.sigma_standard, report.auc_long, report.sigma_long
        );
        reports.insert(method.clone(), report);
    }

    let delta = delta_auc(&reports["ours"], &reports["vanilla"]).unwrap();
    println!(
        "\ndelta vs vanilla: {:+.1} over [1,10], {:+.1} over [6,10]",
        delta.auc_standard, delta.auc_long
    );
    for (model, (s, l)) in &delta.per_model {
        println!("  {model}: {s:+.1} / {l:+.1}");
    }
}
