//! Crossing-optimal acyclic HP-completion of a random OT-st-digraph, checked
//! against the exhaustive oracle.
//!
//! cargo run --example solve -- [seed]

use otst::gen::{random_ot, GenProfile};
use otst::oracle::exhaustive_min_crossings;
use otst::solver::solve;
use otst::verify::verify_solution;

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let g = random_ot(&GenProfile::new(9, 8, 0.8, seed));
    let r = solve(&g).expect("solver output verifies");
    print!("{}", r.render(g.graph()));
    println!("violations: {}", verify_solution(&g, &r).len());
    println!(
        "exhaustive optimum: {}",
        exhaustive_min_crossings(&g).unwrap()
    );
}
