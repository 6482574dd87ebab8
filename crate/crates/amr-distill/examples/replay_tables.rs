//! Replay the golden metric tables: recompute every AUC, sigma, and delta
//! from the shipped accuracy grids and compare against the published values.
//!
//! ```sh
//! cargo run --example replay_tables
//! ```

use amr_distill::tables::{dataset_dirs, replay_dir, TOLERANCE};
use std::path::Path;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/tables");
    for dir in dataset_dirs(&root).expect("fixture datasets present") {
        let report = replay_dir(&dir, (1, 10), (6, 10)).expect("fixtures load");
        println!(
            "{}: {} cells checked, {} mismatches (tolerance ±{TOLERANCE})",
            report.dataset,
            report.cells_checked,
            report.mismatches.len()
        );
        for mismatch in &report.mismatches {
            println!("  {mismatch}");
        }

        let vanilla = &report.computed_auc[&("vanilla".to_string(), "standard".to_string())];
        let ours = &report.computed_auc[&("ours".to_string(), "standard".to_string())];
        println!(
            "  vanilla auc[1,10] first model: {:.2}   ours: {:.2}   delta: {:+.2}",
            vanilla[0],
            ours[0],
            ours[0] - vanilla[0]
        );

        for ((alpha, kind), deltas) in &report.computed_ablation_delta {
            if kind == "delta-standard" {
                let worst = deltas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                println!("  threshold sweep alpha = {alpha}: worst delta {worst:+.2} (all negative: {})",
                    deltas.iter().all(|d| *d < 0.0));
            }
        }
    }
}
