//! Parse a PENMAN graph, inspect its nodes and edges, and round-trip it.
//!
//! ```sh
//! cargo run --example parse_graph
//! ```

use amr_distill::penman::AmrGraph;

fn main() {
    let text = r#"
# sentence: The boy wants the girl to believe him.
(w / want-01~e.1
   :ARG0 (b / boy~e.0)
   :ARG1 (b2 / believe-01~e.4
            :ARG0 (g / girl~e.2)
            :ARG1 b))
"#;

    let graph = AmrGraph::parse(text).expect("well-formed graph");
    println!("root: {}", graph.root());

    println!("\nconcept nodes:");
    for node in graph.concept_nodes() {
        println!(
            "  {} / {:<12} kind: {:?}  alignment: {:?}",
            node.variable, node.label, node.node_kind, node.alignment
        );
    }

    println!("\nrelations:");
    for relation in graph.relations() {
        println!("  {} {} {}", relation.source, relation.role, relation.target);
    }

    // The `:ARG1 b` edge re-enters the boy node: four nodes, not five.
    assert_eq!(graph.concept_nodes().len(), 4);

    let line = graph.serialize();
    println!("\nserialized: {line}");

    let reparsed = AmrGraph::parse(&line).expect("round-trip parses");
    assert_eq!(graph, reparsed);
    println!("round-trip: parse(serialize(g)) == g");
}
