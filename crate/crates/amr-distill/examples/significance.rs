//! Run the one-sample t-test screen over a document's concept entropies and
//! show which concepts survive at the default threshold.
//!
//! ```sh
//! cargo run --example significance
//! ```

use amr_distill::entropy::ConceptEntropy;
use amr_distill::stats::{population, select_significant, student_t_cdf, SelectionMode};

fn concept(label: &str, entropy: f64) -> ConceptEntropy {
    ConceptEntropy {
        concept_label: label.to_string(),
        variable: None,
        entropy,
        subword_count: 1,
    }
}

fn main() {
    let concepts = vec![
        concept("city", 1.10),
        concept("establish-01", 1.25),
        concept("museum", 9.80),
        concept("old", 1.31),
        concept("visit-01", 1.18),
        concept("harbor", 8.90),
    ];

    let entropies: Vec<f64> = concepts.iter().map(|c| c.entropy).collect();
    let pop = population(&entropies).unwrap();
    println!(
        "population: n = {}, mean = {:.3}, sample std = {:.3}",
        pop.n, pop.mean, pop.sample_std
    );

    let alpha = 0.3;
    let results = select_significant(&concepts, alpha, SelectionMode::HighOnly).unwrap();
    println!("\nhigh-only screen at alpha = {alpha}:");
    for r in &results {
        println!(
            "  {:<14} H = {:>5.2}  t = {:>6.3}  p = {:.4}  {}",
            r.concept_label,
            r.entropy,
            r.t_stat,
            r.p_value,
            if r.selected { "selected" } else { "-" }
        );
    }

    let kept: Vec<&str> = results
        .iter()
        .filter(|r| r.selected)
        .map(|r| r.concept_label.as_str())
        .collect();
    println!("\nkept: {kept:?}");

    // The two-sided switch also flags significantly *low* entropies.
    let two_sided = select_significant(&concepts, alpha, SelectionMode::TwoSided).unwrap();
    let kept: Vec<&str> = two_sided
        .iter()
        .filter(|r| r.selected)
        .map(|r| r.concept_label.as_str())
        .collect();
    println!("two-sided keeps: {kept:?}");

    // The CDF underneath: F(0) = 0.5, and large df approaches the normal.
    println!("\nF_t(0, 5) = {}", student_t_cdf(0.0, 5).unwrap());
    println!(
        "F_t(1.959964, 1000000) = {:.6} (normal: 0.975)",
        student_t_cdf(1.959964, 1_000_000).unwrap()
    );
}
