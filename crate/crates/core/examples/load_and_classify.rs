//! Parse a graph file, then inspect its faces and boundary chains.
//!
//! cargo run --example load_and_classify -- crates/core/fixtures/fig9.json

use otst::format::parse_graph;
use otst::graph::OTStDigraph;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| format!("{}/fixtures/fig9.json", env!("CARGO_MANIFEST_DIR")));
    let text = std::fs::read_to_string(&path).expect("readable graph file");
    let g = match parse_graph(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(1);
        }
    };
    println!(
        "{} vertices, {} edges, {} faces",
        g.n(),
        g.m(),
        g.faces().len()
    );
    for v in g.vertices() {
        let around: Vec<&str> = g.rotation(v).iter().map(|i| g.name(i.neighbor)).collect();
        println!("  {:>3}: {}", g.name(v), around.join(" "));
    }
    match OTStDigraph::classify(g) {
        Ok(ot) => {
            let names = |vs: &[otst::graph::VertexId]| {
                vs.iter()
                    .map(|&v| ot.graph().name(v))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            println!("left chain:  {}", names(ot.left()));
            println!("right chain: {}", names(ot.right()));
        }
        Err(e) => println!("not an OT-st-digraph: {e}"),
    }
}
