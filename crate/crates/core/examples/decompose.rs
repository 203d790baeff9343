//! The st-polygon decomposition of a chain of stacked polygons.

use otst::cli::decomposition_listing;
use otst::decomposition::decompose;
use otst::gen::stacked_polygons;

fn main() {
    let g = stacked_polygons(4);
    let d = decompose(&g);
    print!("{}", decomposition_listing(&g, &d));
    for p in d.polygons() {
        println!(
            "{}: {} vertices, {} chords to the sink from the left",
            g.graph().edge_label(p.median),
            p.vertex_count(),
            p.left_to_sink.iter().filter(|&&c| c).count()
        );
    }
}
