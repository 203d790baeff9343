//! The polygon where one completion edge per side costs 5 crossings while a
//! two-edge completion costs 4 but crosses the median twice.

use otst::decomposition::decompose;
use otst::gen::counterexample_polygon;
use otst::graph::DirectedEdge;
use otst::solver::{crossed_edges, polygon_costs};

fn main() {
    let g = counterexample_polygon();
    let gr = g.graph();
    let v = |n| gr.vertex_by_name(n).unwrap();
    let c = polygon_costs(decompose(&g).polygons().next().unwrap());
    println!("c(L) = {}, c(R) = {}", c.left, c.right);
    let mut total = 0;
    for (a, b) in [("u3", "v1"), ("v4", "u4")] {
        let crossed = crossed_edges(&g, DirectedEdge::new(v(a), v(b)));
        let labels: Vec<String> = crossed.iter().map(|&e| gr.edge_label(e)).collect();
        println!("{a}->{b} crosses [{}]", labels.join(","));
        total += crossed.len();
    }
    println!("two-edge set: {total} crossings");
}
