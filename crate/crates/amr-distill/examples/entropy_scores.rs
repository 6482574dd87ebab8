//! Segment a linearization into concept units and score each graph concept
//! with its mean token entropy `H = mean(exp(-logprob))`.
//!
//! ```sh
//! cargo run --example entropy_scores
//! ```

use amr_distill::entropy::{score_graph_concepts, segment_units, ScoredToken};
use amr_distill::penman::AmrGraph;

fn main() {
    let graph =
        AmrGraph::parse("(e / establish-01 :ARG1 (m / museum) :location (c / city))").unwrap();

    // The linearizer's token stream: boundary-prefixed tokens open a unit,
    // unprefixed ones (like "eum") continue the previous unit.
    let tokens: Vec<ScoredToken> = [
        ("(e", -0.05),
        ("Ġ/", -0.02),
        ("Ġestablish-01", -0.9),
        ("Ġ:ARG1", -0.03),
        ("Ġ(m", -0.04),
        ("Ġ/", -0.02),
        ("Ġmus", -2.1),
        ("eum", -2.3),
        ("Ġ)", -0.01),
        ("Ġ:location", -0.03),
        ("Ġ(c", -0.04),
        ("Ġ/", -0.02),
        ("Ġcity", -1.4),
        ("Ġ)", -0.01),
        ("Ġ)", -0.01),
    ]
    .iter()
    .enumerate()
    .map(|(i, (text, logprob))| ScoredToken::new(*text, *logprob, i))
    .collect();

    println!("units (structural ones are filtered before matching):");
    for unit in segment_units(&tokens, "Ġ").unwrap() {
        println!(
            "  {:<14} structural: {}  spans tokens {:?}",
            unit.detokenized, unit.is_structural, unit.token_indices
        );
    }

    let scores = score_graph_concepts(&graph, &tokens, "Ġ").unwrap();
    println!("\nconcept entropies:");
    for concept in &scores.concepts {
        println!(
            "  {:<14} H = {:>6.3}  subwords: {}",
            concept.concept_label, concept.entropy, concept.subword_count
        );
    }
    assert!(scores.unmatched.is_empty());
    println!("\nevery graph node matched a unit; multi-subword `museum` averages its pieces");
}
