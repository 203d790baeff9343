//! Turn an optimal completion into an upward 2-page book embedding, read it
//! back, and write an SVG next to the working directory.

use otst::book::{from_book_embedding, render_svg, render_text, to_book_embedding};
use otst::gen::counterexample_polygon;
use otst::solver::solve;

fn main() {
    let g = counterexample_polygon();
    let r = solve(&g).unwrap();
    let b = to_book_embedding(&g, &r).unwrap();
    print!("{}", render_text(g.graph(), &b));
    println!("spine crossings: {}", b.crossings.len());
    assert_eq!(from_book_embedding(&g, &b).unwrap(), r);
    let out = std::env::temp_dir().join("fig9.svg");
    std::fs::write(&out, render_svg(g.graph(), &b)).unwrap();
    println!("wrote {}", out.display());
}
