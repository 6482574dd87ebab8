//! The TF-IDF retention baseline: score token occurrences by tf·idf and
//! keep the top fraction, preserving original order and spelling.
//!
//! ```sh
//! cargo run --example tfidf_baseline
//! ```

use amr_distill::tfidf::{build_idf, compress_tfidf};

fn main() {
    let corpus = [
        "The old museum near the harbor was established in 1900.",
        "The harbor grew busy after the war.",
        "A new library opened near the old market square.",
        "The museum and the library share one garden.",
    ];

    let idf = build_idf(&corpus).expect("non-empty corpus");
    println!("document count: {}", corpus.len());
    for term in ["the", "museum", "harbor", "garden", "unseen"] {
        println!("  idf({term:<8}) = {:.4}", idf.idf(term));
    }

    println!();
    for keep in [1.0, 0.5, 0.25] {
        let out = compress_tfidf(corpus[0], &idf, keep).expect("valid fraction");
        println!("keep {keep:>4}: {out}");
    }

    // The budget is exact: ceil(keep_fraction * token count) tokens survive.
    let out = compress_tfidf(corpus[0], &idf, 0.5).unwrap();
    let n = corpus[0].split_whitespace().count();
    assert_eq!(out.split_whitespace().count(), n.div_ceil(2));
}
