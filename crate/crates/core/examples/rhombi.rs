//! A triangulated st-digraph has a hamiltonian path exactly when it contains
//! no rhombus.

use otst::gen::{random_ot, rhombus, with_interior_vertices, GenProfile};
use otst::hamiltonicity::{find_rhombi, hamiltonian_path};
use otst::oracle::exhaustive_hamiltonian;

fn main() {
    let g = rhombus();
    let r = &find_rhombi(g.graph()).unwrap()[0];
    let gr = g.graph();
    println!(
        "rhombus: median {} with apexes {} and {}; path: {:?}",
        gr.edge_label(r.median),
        gr.name(r.left_apex),
        gr.name(r.right_apex),
        hamiltonian_path(gr)
    );

    let mut counts = [0usize; 2];
    for seed in 0..200 {
        let base = random_ot(&GenProfile::new(3, 3, 0.3, seed));
        let g = with_interior_vertices(base.graph(), 2, seed);
        let rhombi = find_rhombi(&g).unwrap();
        let path = hamiltonian_path(&g);
        assert_eq!(rhombi.is_empty(), path.is_some());
        assert_eq!(path.is_some(), exhaustive_hamiltonian(&g).unwrap());
        counts[usize::from(path.is_some())] += 1;
    }
    println!(
        "200 graphs with interior vertices: {} hamiltonian, {} blocked by a rhombus",
        counts[1], counts[0]
    );
}
