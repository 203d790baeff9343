//! Crossing-optimal acyclic HP-completion of OT-st-digraphs.
//!
//! Every polygon is solved by a single completion edge (its two chains are
//! visited one after the other), so a solution is a choice of side per
//! element. The dynamic program picks the sides; the path is then spliced
//! together element by element, and the crossings of each completion edge
//! are read off by walking the triangles it passes through.

use crate::decomposition::{decompose, Decomposition, DecompositionElement, StPolygon};
use crate::error::SolveError;
use crate::graph::{DirectedEdge, EdgeId, EmbeddedDigraph, OTStDigraph, Side, VertexId};
use crate::verify::verify_solution;

/// Crossings of the single completion edge of an element, per side from
/// which its sink is entered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonCosts {
    pub left: usize,
    pub right: usize,
    /// `(v^r_m, v^l_1)`, used when the sink is entered from the left.
    pub left_edge: Option<DirectedEdge>,
    /// `(v^l_k, v^r_1)`.
    pub right_edge: Option<DirectedEdge>,
}

impl PolygonCosts {
    pub const FREE: PolygonCosts = PolygonCosts {
        left: 0,
        right: 0,
        left_edge: None,
        right_edge: None,
    };

    pub fn get(&self, side: Side) -> usize {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }
}

pub fn polygon_costs(p: &StPolygon) -> PolygonCosts {
    let count = |flags: &[bool]| flags.iter().filter(|&&f| f).count();
    let (k, m) = (p.left_chain.len(), p.right_chain.len());
    // The completion edge shares an endpoint with the chords at the top of
    // its tail chain and the bottom of its head chain; those are not crossed.
    let right = 1 + count(&p.left_to_sink[..k - 1]) + count(&p.right_from_source[1..]);
    let left = 1 + count(&p.right_to_sink[..m - 1]) + count(&p.left_from_source[1..]);
    PolygonCosts {
        left,
        right,
        left_edge: Some(DirectedEdge::new(p.right_chain[m - 1], p.left_chain[0])),
        right_edge: Some(DirectedEdge::new(p.left_chain[k - 1], p.right_chain[0])),
    }
}

pub fn element_costs(e: &DecompositionElement) -> PolygonCosts {
    match e {
        DecompositionElement::Polygon(p) => polygon_costs(p),
        DecompositionElement::FreeVertex(_) => PolygonCosts::FREE,
    }
}

/// `c(G_i, L)` and `c(G_i, R)` per element prefix, with the predecessor side
/// that achieved each minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub back_left: Vec<Side>,
    pub back_right: Vec<Side>,
}

impl DpTable {
    pub fn get(&self, i: usize, side: Side) -> usize {
        match side {
            Side::Left => self.left[i],
            Side::Right => self.right[i],
        }
    }

    fn back(&self, i: usize, side: Side) -> Side {
        match side {
            Side::Left => self.back_left[i],
            Side::Right => self.back_right[i],
        }
    }

    /// `c(G)` and the side of the optimum; empty tables cost nothing.
    pub fn optimum(&self) -> (usize, Side) {
        match (self.left.last(), self.right.last()) {
            (Some(&l), Some(&r)) => pick(l, r),
            _ => (0, Side::Left),
        }
    }

    /// Side choice per element, following back pointers from the optimum.
    pub fn sides(&self) -> Vec<Side> {
        let len = self.left.len();
        let mut sides = vec![Side::Left; len];
        if len == 0 {
            return sides;
        }
        let mut side = self.optimum().1;
        for i in (0..len).rev() {
            sides[i] = side;
            side = self.back(i, side);
        }
        sides
    }
}

/// Minimum of the L and R candidates; ties go to L.
fn pick(left: usize, right: usize) -> (usize, Side) {
    if left <= right {
        (left, Side::Left)
    } else {
        (right, Side::Right)
    }
}

pub fn dp_solve(
    g: &OTStDigraph,
    d: &Decomposition,
    costs: &[PolygonCosts],
) -> Result<DpTable, SolveError> {
    let len = d.elements.len();
    if costs.len() != len || d.shared.len() + 1 != len.max(1) {
        return Err(SolveError::Internal(
            "cost vector does not match decomposition".into(),
        ));
    }
    let mut t = DpTable {
        left: Vec::with_capacity(len),
        right: Vec::with_capacity(len),
        back_left: Vec::with_capacity(len),
        back_right: Vec::with_capacity(len),
    };
    for (i, element) in d.elements.iter().enumerate() {
        let c = costs[i];
        let ((l, bl), (r, br)) = if i == 0 {
            ((c.left, Side::Left), (c.right, Side::Left))
        } else {
            let (pl, pr) = (t.left[i - 1], t.right[i - 1]);
            let (best, best_side) = pick(pl, pr);
            let previous = &d.elements[i - 1];
            match (element, d.shared[i - 1]) {
                (DecompositionElement::FreeVertex(_), _) => ((best, best_side), (best, best_side)),
                (_, 0 | 1) => ((best + c.left, best_side), (best + c.right, best_side)),
                (DecompositionElement::Polygon(_), 2) => {
                    let sink = match previous {
                        DecompositionElement::Polygon(p) => p.sink,
                        DecompositionElement::FreeVertex(_) => {
                            return Err(SolveError::InconsistentDecomposition(
                                i,
                                "two shared vertices with a free vertex".into(),
                            ))
                        }
                    };
                    match g.chain_side(sink) {
                        Some(Side::Left) => (
                            pick(pl + c.left + 1, pr + c.left),
                            pick(pl + c.right, pr + c.right),
                        ),
                        Some(Side::Right) => (
                            pick(pl + c.left, pr + c.left),
                            pick(pl + c.right, pr + c.right + 1),
                        ),
                        None => {
                            return Err(SolveError::InconsistentDecomposition(
                                i,
                                "shared limiting edge ends at s or t".into(),
                            ))
                        }
                    }
                }
                (_, n) => {
                    return Err(SolveError::InconsistentDecomposition(
                        i,
                        format!("{n} shared vertices"),
                    ))
                }
            }
        };
        t.left.push(l);
        t.right.push(r);
        t.back_left.push(bl);
        t.back_right.push(br);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionEdge {
    pub edge: DirectedEdge,
    /// Edges of `G` crossed, in order from tail to head.
    pub crossings: Vec<DirectedEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpCompletionResult {
    pub path: Vec<VertexId>,
    pub completion: Vec<CompletionEdge>,
    pub total_crossings: usize,
}

impl HpCompletionResult {
    /// Derives the completion set from a path: every consecutive pair that
    /// is not an edge of `g`, with the edges it must cross.
    pub fn from_path(g: &OTStDigraph, path: Vec<VertexId>) -> HpCompletionResult {
        let graph = g.graph();
        let completion: Vec<CompletionEdge> = path
            .windows(2)
            .filter(|w| !graph.has_edge(w[0], w[1]))
            .map(|w| {
                let edge = DirectedEdge::new(w[0], w[1]);
                CompletionEdge {
                    edge,
                    crossings: crossed_edges(g, edge),
                }
            })
            .collect();
        let total_crossings = completion.iter().map(|c| c.crossings.len()).sum();
        HpCompletionResult {
            path,
            completion,
            total_crossings,
        }
    }

    pub fn render(&self, g: &EmbeddedDigraph) -> String {
        let names: Vec<&str> = self.path.iter().map(|&v| g.name(v)).collect();
        let mut out = format!(
            "crossings={}\npath={}\n",
            self.total_crossings,
            names.join(",")
        );
        for c in &self.completion {
            let crossed: Vec<String> = c.crossings.iter().map(|&e| g.edge_label(e)).collect();
            out.push_str(&format!(
                "add {} crosses [{}]\n",
                g.edge_label(c.edge),
                crossed.join(",")
            ));
        }
        out
    }
}

fn edge_between(g: &EmbeddedDigraph, a: VertexId, b: VertexId) -> Option<EdgeId> {
    g.find_edge(a, b).or_else(|| g.find_edge(b, a))
}

/// Edges of `G` crossed by the straight chord `ce` between two boundary
/// vertices, in the order met from tail to head. Walks the triangles the
/// chord passes through, so the cost is the degree of the tail plus the
/// number of crossings.
pub fn crossed_edges(g: &OTStDigraph, ce: DirectedEdge) -> Vec<DirectedEdge> {
    let graph = g.graph();
    let (u, w) = (ce.tail, ce.head);
    if u == w || graph.adjacent(u, w) {
        return Vec::new();
    }
    let n = g.n();
    let key = |z: VertexId| (g.cycle_position(z) + n - g.cycle_position(u)) % n;
    let target = key(w);
    // The neighbours of u closest to w on either side bound the first face.
    let (mut a, mut b) = (None::<VertexId>, None::<VertexId>);
    for inc in graph.rotation(u) {
        let k = key(inc.neighbor);
        if k < target && a.is_none_or(|x| key(x) < k) {
            a = Some(inc.neighbor);
        }
        if k > target && b.is_none_or(|x| key(x) > k) {
            b = Some(inc.neighbor);
        }
    }
    let (Some(mut a), Some(mut b)) = (a, b) else {
        return Vec::new();
    };
    let mut prev = u;
    let mut crossed = Vec::new();
    while let Some(id) = edge_between(graph, a, b) {
        let e = graph.edge(id);
        crossed.push(e);
        let apexes = [graph.left_apex(id, e.tail), graph.right_apex(id, e.tail)];
        let Some(c) = apexes.into_iter().flatten().find(|&c| c != prev) else {
            break;
        };
        if c == w {
            break;
        }
        if key(c) < target {
            prev = a;
            a = c;
        } else {
            prev = b;
            b = c;
        }
    }
    crossed
}

/// Singly linked vertex list supporting insertion after any vertex.
struct PathBuilder {
    next: Vec<Option<VertexId>>,
    head: Option<VertexId>,
    tail: Option<VertexId>,
    len: usize,
}

impl PathBuilder {
    fn new(n: usize) -> Self {
        PathBuilder {
            next: vec![None; n],
            head: None,
            tail: None,
            len: 0,
        }
    }

    fn push(&mut self, v: VertexId) {
        match self.tail {
            Some(t) => self.next[t.0] = Some(v),
            None => self.head = Some(v),
        }
        self.tail = Some(v);
        self.len += 1;
    }

    fn extend(&mut self, vs: &[VertexId]) {
        for &v in vs {
            self.push(v);
        }
    }

    /// Splices `vs` in right after `at`.
    fn insert_after(&mut self, at: VertexId, vs: &[VertexId]) {
        let Some(&last) = vs.last() else { return };
        let after = self.next[at.0];
        let mut cur = at;
        for &v in vs {
            self.next[cur.0] = Some(v);
            cur = v;
        }
        self.next[last.0] = after;
        if self.tail == Some(at) {
            self.tail = Some(last);
        }
        self.len += vs.len();
    }

    fn into_vec(self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len);
        let mut cur = self.head;
        while let Some(v) = cur {
            out.push(v);
            cur = self.next[v.0];
            if out.len() > self.len {
                break;
            }
        }
        out
    }
}

/// Sub-path of a polygon whose sink is entered from `side`: the opposite
/// chain first, then the `side` chain.
fn polygon_path(p: &StPolygon, side: Side) -> Vec<VertexId> {
    let mut path = Vec::with_capacity(p.vertex_count());
    path.push(p.source);
    path.extend_from_slice(p.chain(side.flip()));
    path.extend_from_slice(p.chain(side));
    path.push(p.sink);
    path
}

/// Builds the hamiltonian path for a side choice per element, following
/// the junction rules for consecutive elements.
pub fn build_path(
    g: &OTStDigraph,
    d: &Decomposition,
    sides: &[Side],
) -> Result<Vec<VertexId>, SolveError> {
    let graph = g.graph();
    let mut b = PathBuilder::new(g.n());
    for (i, element) in d.elements.iter().enumerate() {
        let side = sides[i];
        let inconsistent = |msg: &str| SolveError::InconsistentDecomposition(i, msg.to_string());
        if i == 0 {
            if element.representative() != g.source() {
                return Err(inconsistent("first element does not start at s"));
            }
            match element {
                DecompositionElement::FreeVertex(v) => b.push(*v),
                DecompositionElement::Polygon(p) => b.extend(&polygon_path(p, side)),
            }
            continue;
        }
        let prev_sink = d.elements[i - 1].sink();
        match (element, d.shared[i - 1]) {
            (DecompositionElement::FreeVertex(v), _) => {
                if !graph.has_edge(prev_sink, *v) {
                    return Err(inconsistent("free vertex not reached from previous sink"));
                }
                b.push(*v);
            }
            (DecompositionElement::Polygon(p), 0) => {
                if !graph.has_edge(prev_sink, p.source) {
                    return Err(inconsistent(
                        "disjoint polygon not reached from previous sink",
                    ));
                }
                b.extend(&polygon_path(p, side));
            }
            (DecompositionElement::Polygon(p), 1) => {
                if prev_sink != p.source {
                    return Err(inconsistent("single shared vertex is not the junction"));
                }
                b.extend(&polygon_path(p, side)[1..]);
            }
            (DecompositionElement::Polygon(p), 2) => {
                let Some(sink_side) = g.chain_side(prev_sink) else {
                    return Err(inconsistent("shared limiting edge ends at s or t"));
                };
                // The previous sink is the bottom of this polygon's chain on
                // its side; the source is the top of the previous polygon's
                // opposite chain.
                let same = p.chain(sink_side);
                let other = p.chain(sink_side.flip());
                if same.first() != Some(&prev_sink) {
                    return Err(inconsistent(
                        "previous sink does not start the polygon chain",
                    ));
                }
                if side == sink_side {
                    // The opposite chain goes right after this polygon's
                    // source, which is already on the path.
                    b.insert_after(p.source, other);
                    b.extend(&same[1..]);
                } else {
                    b.extend(&same[1..]);
                    b.extend(other);
                }
                b.push(p.sink);
            }
            (_, n) => return Err(inconsistent(&format!("{n} shared vertices"))),
        }
    }
    let path = b.into_vec();
    if path.len() != g.n() {
        return Err(SolveError::Internal(format!(
            "path covers {} of {} vertices",
            path.len(),
            g.n()
        )));
    }
    Ok(path)
}

pub fn reconstruct(
    g: &OTStDigraph,
    d: &Decomposition,
    table: &DpTable,
) -> Result<HpCompletionResult, SolveError> {
    let path = build_path(g, d, &table.sides())?;
    let result = HpCompletionResult::from_path(g, path);
    let (expected, _) = table.optimum();
    if result.total_crossings != expected {
        return Err(SolveError::Internal(format!(
            "path has {} crossings, table says {expected}",
            result.total_crossings
        )));
    }
    let violations = verify_solution(g, &result);
    if let Some(v) = violations.first() {
        return Err(SolveError::Internal(v.to_string()));
    }
    Ok(result)
}

/// Prices the elements of an existing decomposition, runs the dynamic
/// program and reconstructs the verified optimum.
pub fn solve_decomposed(
    g: &OTStDigraph,
    d: &Decomposition,
) -> Result<HpCompletionResult, SolveError> {
    let costs: Vec<PolygonCosts> = d.elements.iter().map(element_costs).collect();
    let table = dp_solve(g, d, &costs)?;
    reconstruct(g, d, &table)
}

/// Crossing-optimal acyclic HP-completion with at most one crossing per edge.
pub fn solve(g: &OTStDigraph) -> Result<HpCompletionResult, SolveError> {
    solve_decomposed(g, &decompose(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::gen::{
        counterexample_polygon, random_ot, rhombus, stacked_polygons, triangle, GenProfile,
    };

    fn names(g: &EmbeddedDigraph, vs: &[VertexId]) -> Vec<String> {
        vs.iter().map(|&v| g.name(v).to_string()).collect()
    }

    #[test]
    fn rhombus_output() {
        let g = rhombus();
        let r = solve(&g).unwrap();
        assert_eq!(
            r.render(g.graph()),
            "crossings=1\npath=s,b,a,t\nadd b->a crosses [s->t]\n"
        );
    }

    #[test]
    fn triangle_needs_nothing() {
        let r = solve(&triangle()).unwrap();
        assert_eq!(r.total_crossings, 0);
        assert!(r.completion.is_empty());
    }

    #[test]
    fn counterexample_costs() {
        let g = counterexample_polygon();
        let d = decompose(&g);
        let c = polygon_costs(d.polygons().next().unwrap());
        assert_eq!((c.left, c.right), (5, 5));
        assert_eq!(g.graph().edge_label(c.left_edge.unwrap()), "v4->u1");
        assert_eq!(g.graph().edge_label(c.right_edge.unwrap()), "u8->v1");
        let r = solve(&g).unwrap();
        assert_eq!(r.total_crossings, 5);
        let mut crossed: Vec<_> = r
            .completion
            .iter()
            .flat_map(|c| c.crossings.clone())
            .collect();
        crossed.sort_by_key(|e| (e.tail, e.head));
        crossed.dedup();
        assert_eq!(crossed.len(), 5);
    }

    #[test]
    fn free_vertices_cost_nothing() {
        let g = triangle();
        let d = decompose(&g);
        let costs: Vec<_> = d.elements.iter().map(element_costs).collect();
        assert!(costs.iter().all(|c| *c == PolygonCosts::FREE));
        let t = dp_solve(&g, &d, &costs).unwrap();
        assert_eq!(t.optimum().0, 0);
    }

    #[test]
    fn stacked_chain_costs_one_per_polygon() {
        let g = stacked_polygons(6);
        let r = solve(&g).unwrap();
        assert_eq!(r.total_crossings, 6);
        assert_eq!(r.path.len(), g.n());
    }

    #[test]
    fn crossing_order_from_tail() {
        let g = counterexample_polygon();
        let gr = g.graph();
        let v = |n| gr.vertex_by_name(n).unwrap();
        let crossed = crossed_edges(&g, DirectedEdge::new(v("v4"), v("u1")));
        let labels: Vec<String> = crossed.iter().map(|&e| gr.edge_label(e)).collect();
        assert_eq!(labels, ["v1->t", "s->t", "s->u4", "s->u3", "s->u2"]);
    }

    #[test]
    fn from_path_lists_missing_edges() {
        let g = rhombus();
        let gr = g.graph();
        let path: Vec<VertexId> = ["s", "a", "b", "t"]
            .iter()
            .map(|n| gr.vertex_by_name(n).unwrap())
            .collect();
        let r = HpCompletionResult::from_path(&g, path);
        assert_eq!(r.completion.len(), 1);
        assert_eq!(gr.edge_label(r.completion[0].edge), "a->b");
        assert_eq!(r.total_crossings, 1);
    }

    #[test]
    fn dp_sides_rebuild_a_hamiltonian_path() {
        for seed in 0..40 {
            let g = random_ot(&GenProfile::new(6, 5, 0.7, seed));
            let d = decompose(&g);
            let costs: Vec<_> = d.elements.iter().map(element_costs).collect();
            let t = dp_solve(&g, &d, &costs).unwrap();
            let path = build_path(&g, &d, &t.sides()).unwrap();
            let mut sorted = names(g.graph(), &path);
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), g.n(), "seed {seed}");
            assert_eq!(solve(&g).unwrap().total_crossings, t.optimum().0);
        }
    }
}
