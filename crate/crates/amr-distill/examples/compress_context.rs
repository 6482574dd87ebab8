//! End-to-end record compression: read corpus records, filter to
//! answer-bearing documents, select significant concepts, and realize the
//! compressed context.
//!
//! ```sh
//! cargo run --example compress_context
//! ```

use amr_distill::config::PipelineConfig;
use amr_distill::pipeline::{compress_instance, prepare_instance};
use amr_distill::records::CorpusRecord;
use std::path::Path;

fn main() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus/synthetic.jsonl");
    let text = std::fs::read_to_string(&corpus).expect("fixture corpus present");
    let config = PipelineConfig::default();

    for line in text.lines().take(3) {
        let record = CorpusRecord::from_line(line).expect("schema-valid record");
        let instance = record.into_instance().expect("graphs parse");
        let instance = prepare_instance(instance, config.k_max).expect("k in window");
        let source: Vec<String> = instance
            .documents
            .iter()
            .map(|d| d.text.clone())
            .collect();

        let out = compress_instance(&instance, &config).expect("compression succeeds");
        println!("query {} (k = {})", out.query_id, out.k);
        for (doc, original) in out.documents.iter().zip(&source) {
            println!("  source:     {original}");
            println!(
                "  compressed: {} ({} concepts, {} unmatched nodes)",
                doc.text, doc.selected_concepts, doc.unmatched_nodes
            );
        }
        println!("  tau = {:.3}\n", out.tau);
    }
}
