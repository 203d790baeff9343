//! Upward 2-page topological book embeddings and their translation to and
//! from HP-completion results.
//!
//! The spine is the hamiltonian path. An edge that no completion edge
//! crosses lies entirely on one side of the path and goes to that page; a
//! crossed edge changes sides where it meets the completion edge, which in
//! the book is a spine crossing inside the gap of that completion edge.

use std::fmt::Write as _;

use crate::error::EmbeddingError;
use crate::graph::{DirectedEdge, EmbeddedDigraph, OTStDigraph, Side, VertexId};
use crate::solver::{CompletionEdge, HpCompletionResult};
use crate::verify::{interleaving_pair, verify_solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpineCrossing {
    pub edge: DirectedEdge,
    /// The crossing lies strictly between spine ranks `gap` and `gap + 1`.
    pub gap: usize,
    /// Order among the crossings of the same gap, bottom first.
    pub rank_in_gap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageAssignment {
    Page(Side),
    Split {
        lower: Side,
        crossing: SpineCrossing,
        upper: Side,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BookEmbedding {
    pub spine: Vec<VertexId>,
    /// Parallel to the edge list of the graph.
    pub assignment: Vec<(DirectedEdge, PageAssignment)>,
    pub crossings: Vec<SpineCrossing>,
}

/// Side of the hamiltonian path on which the edge from `x` to `z` leaves
/// `x`. Around a boundary vertex the clockwise order of neighbours is the
/// order of their cycle positions, so "clockwise strictly between the
/// outgoing and the incoming path edge" is a range test on positions.
fn side_at(
    g: &OTStDigraph,
    x: VertexId,
    prev: Option<VertexId>,
    next: Option<VertexId>,
    z: VertexId,
) -> Side {
    let n = g.n();
    let key = |v: VertexId| (g.cycle_position(v) + n - g.cycle_position(x)) % n;
    let out_key = next.map_or(0, key);
    let in_key = prev.map_or(n, key);
    let k = key(z);
    let right = if out_key < in_key {
        out_key < k && k < in_key
    } else {
        k > out_key || k < in_key
    };
    if right {
        Side::Right
    } else {
        Side::Left
    }
}

pub fn to_book_embedding(
    g: &OTStDigraph,
    r: &HpCompletionResult,
) -> Result<BookEmbedding, EmbeddingError> {
    if let Some(v) = verify_solution(g, r).first() {
        return Err(EmbeddingError::BadSolution(v.to_string()));
    }
    let graph = g.graph();
    let n = g.n();
    let mut rank = vec![0usize; n];
    for (i, &v) in r.path.iter().enumerate() {
        rank[v.0] = i;
    }
    let prev = |v: VertexId| (rank[v.0] > 0).then(|| r.path[rank[v.0] - 1]);
    let next = |v: VertexId| r.path.get(rank[v.0] + 1).copied();

    let mut split: Vec<Option<SpineCrossing>> = vec![None; graph.m()];
    let mut crossings = Vec::with_capacity(r.total_crossings);
    for c in &r.completion {
        let gap = rank[c.edge.tail.0];
        for (i, &e) in c.crossings.iter().enumerate() {
            let id = graph.find_edge(e.tail, e.head).expect("verified edge");
            let sc = SpineCrossing {
                edge: e,
                gap,
                rank_in_gap: i,
            };
            split[id.0] = Some(sc);
            crossings.push(sc);
        }
    }
    let assignment = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let on_path = rank[e.head.0] == rank[e.tail.0] + 1;
            let a = if on_path {
                PageAssignment::Page(Side::Right)
            } else {
                let lower = side_at(g, e.tail, prev(e.tail), next(e.tail), e.head);
                match split[i] {
                    None => PageAssignment::Page(lower),
                    Some(crossing) => PageAssignment::Split {
                        lower,
                        crossing,
                        upper: side_at(g, e.head, prev(e.head), next(e.head), e.tail),
                    },
                }
            };
            (e, a)
        })
        .collect();
    Ok(BookEmbedding {
        spine: r.path.clone(),
        assignment,
        crossings,
    })
}

/// Spine coordinate of vertex rank `i`, scaled so that every crossing of a
/// gap gets its own integer slot.
fn scale(b: &BookEmbedding) -> u64 {
    let mut per_gap = std::collections::HashMap::new();
    for c in &b.crossings {
        *per_gap.entry(c.gap).or_insert(0u64) += 1;
    }
    per_gap.values().copied().max().unwrap_or(0) + 1
}

pub fn validate_embedding(g: &EmbeddedDigraph, b: &BookEmbedding) -> Vec<String> {
    let mut out = Vec::new();
    let n = g.n();
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in b.spine.iter().enumerate() {
        if v.0 >= n || rank[v.0] != usize::MAX {
            out.push(format!("spine entry {i} is not a fresh vertex"));
            return out;
        }
        rank[v.0] = i;
    }
    if b.spine.len() != n {
        out.push(format!("spine holds {} of {n} vertices", b.spine.len()));
        return out;
    }
    if b.assignment.len() != g.m() || b.assignment.iter().zip(g.edges()).any(|((e, _), f)| e != f) {
        out.push("assignment does not list the graph's edges in order".to_string());
        return out;
    }
    let k = scale(b);
    let mut pages: [Vec<(u64, u64)>; 2] = [Vec::new(), Vec::new()];
    let mut owners: [Vec<String>; 2] = [Vec::new(), Vec::new()];
    let page = |s: Side| usize::from(s == Side::Right);
    let mut split_count = 0;
    for &(e, a) in &b.assignment {
        let label = g.edge_label(e);
        let (lo, hi) = (rank[e.tail.0], rank[e.head.0]);
        if lo >= hi {
            out.push(format!("{label} is not upward"));
            continue;
        }
        match a {
            PageAssignment::Page(s) => {
                pages[page(s)].push((lo as u64 * k, hi as u64 * k));
                owners[page(s)].push(label);
            }
            PageAssignment::Split {
                lower,
                crossing,
                upper,
            } => {
                split_count += 1;
                if crossing.edge != e {
                    out.push(format!("{label} carries a crossing of another edge"));
                }
                if lower == upper {
                    out.push(format!("{label} stays on one page across the spine"));
                }
                if crossing.rank_in_gap + 1 >= k as usize {
                    out.push(format!(
                        "{label} has rank {} in its gap",
                        crossing.rank_in_gap
                    ));
                    continue;
                }
                if !(lo <= crossing.gap && crossing.gap < hi) {
                    out.push(format!("{label} crosses the spine outside its span"));
                    continue;
                }
                let x = crossing.gap as u64 * k + crossing.rank_in_gap as u64 + 1;
                pages[page(lower)].push((lo as u64 * k, x));
                owners[page(lower)].push(label.clone());
                pages[page(upper)].push((x, hi as u64 * k));
                owners[page(upper)].push(label);
            }
        }
    }
    if split_count != b.crossings.len() {
        out.push(format!(
            "{split_count} split edges but {} listed crossings",
            b.crossings.len()
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for c in &b.crossings {
        if !seen.insert((c.gap, c.rank_in_gap)) {
            out.push(format!(
                "two crossings at gap {} rank {}",
                c.gap, c.rank_in_gap
            ));
        }
        if !seen.insert((usize::MAX, c.edge.tail.0 * n + c.edge.head.0)) {
            out.push(format!("{} crosses the spine twice", g.edge_label(c.edge)));
        }
    }
    for (p, side) in [(0, Side::Left), (1, Side::Right)] {
        if let Some((i, j)) = interleaving_pair(&pages[p]) {
            out.push(format!(
                "{} and {} cross on page {side}",
                owners[p][i], owners[p][j]
            ));
        }
    }
    out
}

/// Reads the completion set back off a book embedding: consecutive spine
/// pairs that are not edges, each crossing the edges that cross the spine
/// in its gap.
pub fn from_book_embedding(
    g: &OTStDigraph,
    b: &BookEmbedding,
) -> Result<HpCompletionResult, EmbeddingError> {
    let graph = g.graph();
    if let Some(v) = validate_embedding(graph, b).first() {
        return Err(EmbeddingError::Invalid(v.clone()));
    }
    let mut by_gap: Vec<Vec<SpineCrossing>> = vec![Vec::new(); b.spine.len()];
    for c in &b.crossings {
        by_gap[c.gap].push(*c);
    }
    let mut completion = Vec::new();
    for (i, w) in b.spine.windows(2).enumerate() {
        let mut here = std::mem::take(&mut by_gap[i]);
        if graph.has_edge(w[0], w[1]) {
            if !here.is_empty() {
                return Err(EmbeddingError::Invalid(format!(
                    "spine crossing under the edge {}",
                    graph.edge_label(DirectedEdge::new(w[0], w[1]))
                )));
            }
            continue;
        }
        here.sort_by_key(|c| c.rank_in_gap);
        completion.push(CompletionEdge {
            edge: DirectedEdge::new(w[0], w[1]),
            crossings: here.into_iter().map(|c| c.edge).collect(),
        });
    }
    let total_crossings = completion.iter().map(|c| c.crossings.len()).sum();
    let r = HpCompletionResult {
        path: b.spine.clone(),
        completion,
        total_crossings,
    };
    if let Some(v) = verify_solution(g, &r).first() {
        return Err(EmbeddingError::Invalid(v.to_string()));
    }
    Ok(r)
}

pub fn render_text(g: &EmbeddedDigraph, b: &BookEmbedding) -> String {
    let names: Vec<&str> = b.spine.iter().map(|&v| g.name(v)).collect();
    let mut out = format!("spine: {}\n", names.join(" "));
    for &(e, a) in &b.assignment {
        let label = g.edge_label(e);
        match a {
            PageAssignment::Page(s) => {
                let _ = writeln!(out, "{label} page={}", s.letter());
            }
            PageAssignment::Split {
                lower,
                crossing,
                upper,
            } => {
                let _ = writeln!(
                    out,
                    "{label} split {}@gap({},{})/{}",
                    lower.letter(),
                    crossing.gap,
                    crossing.rank_in_gap,
                    upper.letter()
                );
            }
        }
    }
    out
}

const UNIT: f64 = 60.0;
const MARGIN: f64 = 40.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Vertical spine with rank 0 at the bottom; arcs are half-circles to the
/// left or right of the spine, split edges two half-circles meeting at
/// their crossing point.
pub fn render_svg(g: &EmbeddedDigraph, b: &BookEmbedding) -> String {
    let n = b.spine.len().max(1);
    let height = (n - 1) as f64 * UNIT;
    let mut per_gap = vec![0usize; n];
    for c in &b.crossings {
        per_gap[c.gap] += 1;
    }
    // y coordinate of a spine position measured in ranks (fractional inside
    // gaps).
    let y = |r: f64| MARGIN + height - r * UNIT;
    let spine_x = MARGIN + height / 2.0 + UNIT;
    let width = 2.0 * spine_x;
    let total_h = height + 2.0 * MARGIN;
    let mut rank = vec![0usize; g.n()];
    for (i, &v) in b.spine.iter().enumerate() {
        rank[v.0] = i;
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{total_h:.1}" viewBox="0 0 {width:.1} {total_h:.1}">"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{spine_x:.1}" y1="{:.1}" x2="{spine_x:.1}" y2="{:.1}" stroke="black" stroke-width="2"/>"#,
        y(0.0),
        y((n - 1) as f64)
    );
    let arc = |out: &mut String, from: f64, to: f64, side: Side, class: &str| {
        let r = (to - from) * UNIT / 2.0;
        // Drawn bottom to top; a clockwise sweep bulges to the left.
        let sweep = match side {
            Side::Left => 1,
            Side::Right => 0,
        };
        let _ = writeln!(
            out,
            r#"<path class="{class}" d="M {spine_x:.1} {:.1} A {r:.1} {r:.1} 0 0 {sweep} {spine_x:.1} {:.1}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            y(from),
            y(to),
            if class == "split" {
                "crimson"
            } else {
                "steelblue"
            }
        );
    };
    for &(e, a) in &b.assignment {
        let (lo, hi) = (rank[e.tail.0] as f64, rank[e.head.0] as f64);
        match a {
            PageAssignment::Page(side) => arc(&mut out, lo, hi, side, "edge"),
            PageAssignment::Split {
                lower,
                crossing,
                upper,
            } => {
                let slots = per_gap[crossing.gap] + 1;
                let x = crossing.gap as f64 + (crossing.rank_in_gap + 1) as f64 / slots as f64;
                arc(&mut out, lo, x, lower, "split");
                arc(&mut out, x, hi, upper, "split");
                let _ = writeln!(
                    out,
                    r#"<circle cx="{spine_x:.1}" cy="{:.1}" r="3" fill="crimson"/>"#,
                    y(x)
                );
            }
        }
    }
    for (i, &v) in b.spine.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle cx="{spine_x:.1}" cy="{:.1}" r="5" fill="white" stroke="black"/>"#,
            y(i as f64)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12">{}</text>"#,
            spine_x + 8.0,
            y(i as f64) - 6.0,
            escape(g.name(v))
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{counterexample_polygon, rhombus, triangle};
    use crate::solver::solve;

    fn embedding(g: &OTStDigraph) -> BookEmbedding {
        to_book_embedding(g, &solve(g).unwrap()).unwrap()
    }

    #[test]
    fn rhombus_has_one_split_edge() {
        let g = rhombus();
        let b = embedding(&g);
        assert_eq!(b.crossings.len(), 1);
        assert_eq!(b.crossings[0].gap, 1);
        assert!(validate_embedding(g.graph(), &b).is_empty());
        let text = render_text(g.graph(), &b);
        assert!(text.starts_with("spine: s b a t\n"));
        assert!(text.contains("s->t split L@gap(1,0)/R"));
    }

    #[test]
    fn triangle_is_on_one_page() {
        let g = triangle();
        let b = embedding(&g);
        assert!(b.crossings.is_empty());
        assert!(b
            .assignment
            .iter()
            .all(|(_, a)| matches!(a, PageAssignment::Page(_))));
    }

    #[test]
    fn round_trip() {
        let g = counterexample_polygon();
        let r = solve(&g).unwrap();
        let b = to_book_embedding(&g, &r).unwrap();
        assert_eq!(b.crossings.len(), r.total_crossings);
        assert_eq!(from_book_embedding(&g, &b).unwrap(), r);
    }

    #[test]
    fn rejects_broken_embeddings() {
        let g = rhombus();
        let good = embedding(&g);

        let mut b = good.clone();
        b.spine.reverse();
        assert!(!validate_embedding(g.graph(), &b).is_empty());

        let mut b = good.clone();
        for (_, a) in b.assignment.iter_mut() {
            if let PageAssignment::Split { lower, upper, .. } = a {
                *upper = *lower;
            }
        }
        assert!(!validate_embedding(g.graph(), &b).is_empty());

        let mut b = good;
        b.crossings.push(b.crossings[0]);
        assert!(from_book_embedding(&g, &b).is_err());
    }

    #[test]
    fn svg_has_every_vertex() {
        let g = rhombus();
        let svg = render_svg(g.graph(), &embedding(&g));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        for name in ["s", "a", "b", "t"] {
            assert!(svg.contains(&format!(">{name}<")), "{name}");
        }
    }
}
