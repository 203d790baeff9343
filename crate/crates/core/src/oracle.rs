//! Brute-force reference implementations used to cross-check the fast
//! algorithms. Everything here is exponential and guarded by size limits.

use crate::decomposition::{decompose, StPolygon};
use crate::error::SolveError;
use crate::graph::{DirectedEdge, EmbeddedDigraph, OTStDigraph, Side, VertexId};
use crate::hamiltonicity::rhombus_at;
use crate::solver::{build_path, CompletionEdge, HpCompletionResult};
use crate::verify::{chords_cross, interleaving_counts, verify_solution};

pub const MAX_ORACLE_POLYGONS: usize = 20;
pub const MAX_HAMILTONIAN_VERTICES: usize = 12;
pub const MAX_EXTENSION_VERTICES: usize = 14;

/// Completion set of `path` with crossing lists taken from the boundary
/// cycle alone (unordered geometry, sorted by nothing but membership).
fn completion_by_interleaving(g: &OTStDigraph, path: Vec<VertexId>) -> HpCompletionResult {
    let graph = g.graph();
    let completion: Vec<CompletionEdge> = path
        .windows(2)
        .filter(|w| !graph.has_edge(w[0], w[1]))
        .map(|w| {
            let edge = DirectedEdge::new(w[0], w[1]);
            let crossings = graph
                .edges()
                .iter()
                .copied()
                .filter(|&e| chords_cross(g, e, w[0], w[1]))
                .collect();
            CompletionEdge { edge, crossings }
        })
        .collect();
    let total_crossings = completion.iter().map(|c| c.crossings.len()).sum();
    HpCompletionResult {
        path,
        completion,
        total_crossings,
    }
}

/// True when every edge is crossed at most once and the HP-extended digraph
/// is acyclic; crossing order is not needed for either.
fn admissible(g: &OTStDigraph, r: &HpCompletionResult) -> bool {
    let mut crossed = vec![false; g.graph().m()];
    for c in &r.completion {
        for e in &c.crossings {
            let id = g.graph().find_edge(e.tail, e.head).expect("edge of g");
            if std::mem::replace(&mut crossed[id.0], true) {
                return false;
            }
        }
    }
    let ordered = HpCompletionResult::from_path(g, r.path.clone());
    verify_solution(g, &ordered).is_empty()
}

/// Minimum crossings over all `2^λ` side choices of the decomposition, each
/// turned into a path by the junction rules and priced by counting
/// interleaving chords. Choices that break the one-crossing-per-edge rule
/// or create a cycle are skipped.
pub fn exhaustive_min_crossings(g: &OTStDigraph) -> Result<usize, SolveError> {
    let d = decompose(g);
    let polygon_slots: Vec<usize> = d
        .elements
        .iter()
        .enumerate()
        .filter(|(_, e)| e.as_polygon().is_some())
        .map(|(i, _)| i)
        .collect();
    let lambda = polygon_slots.len();
    if lambda > MAX_ORACLE_POLYGONS {
        return Err(SolveError::TooManyPolygons(lambda, MAX_ORACLE_POLYGONS));
    }
    let mut best: Option<usize> = None;
    for mask in 0u32..(1u32 << lambda) {
        let mut sides = vec![Side::Left; d.elements.len()];
        for (bit, &slot) in polygon_slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                sides[slot] = Side::Right;
            }
        }
        let path = build_path(g, &d, &sides)?;
        let graph = g.graph();
        let chords: Vec<DirectedEdge> = path
            .windows(2)
            .filter(|w| !graph.has_edge(w[0], w[1]))
            .map(|w| DirectedEdge::new(w[0], w[1]))
            .collect();
        let cost: usize = interleaving_counts(g, &chords).iter().sum();
        if best.is_some_and(|b| b <= cost) {
            continue;
        }
        if admissible(g, &completion_by_interleaving(g, path)) {
            best = Some(cost);
        }
    }
    best.ok_or_else(|| SolveError::Internal("no admissible side choice".into()))
}

/// Minimum crossings over every topological order of `g`, with no use of
/// the decomposition at all. `None` when no order is admissible.
pub fn brute_force_min_crossings(g: &OTStDigraph) -> Result<Option<usize>, SolveError> {
    let n = g.n();
    if n > MAX_EXTENSION_VERTICES {
        return Err(SolveError::TooManyVertices(n, MAX_EXTENSION_VERTICES));
    }
    let mut indeg = vec![0usize; n];
    for e in g.graph().edges() {
        indeg[e.head.0] += 1;
    }
    let mut best = None;
    let mut path = Vec::with_capacity(n);
    extend_orders(g, &mut indeg, &mut path, &mut best);
    Ok(best)
}

fn extend_orders(
    g: &OTStDigraph,
    indeg: &mut [usize],
    path: &mut Vec<VertexId>,
    best: &mut Option<usize>,
) {
    let graph = g.graph();
    if path.len() == g.n() {
        let r = completion_by_interleaving(g, path.clone());
        if best.is_none_or(|b| r.total_crossings < b) && admissible(g, &r) {
            *best = Some(r.total_crossings);
        }
        return;
    }
    let ready: Vec<VertexId> = graph
        .vertices()
        .filter(|v| indeg[v.0] == 0 && !path.contains(v))
        .collect();
    for v in ready {
        path.push(v);
        for inc in graph.rotation(v).iter().filter(|i| i.outgoing) {
            indeg[inc.neighbor.0] -= 1;
        }
        extend_orders(g, indeg, path, best);
        for inc in graph.rotation(v).iter().filter(|i| i.outgoing) {
            indeg[inc.neighbor.0] += 1;
        }
        path.pop();
    }
}

/// Depth-first search over simple directed paths from the source.
pub fn exhaustive_hamiltonian(g: &EmbeddedDigraph) -> Result<bool, SolveError> {
    let n = g.n();
    if n > MAX_HAMILTONIAN_VERTICES {
        return Err(SolveError::TooManyVertices(n, MAX_HAMILTONIAN_VERTICES));
    }
    fn dfs(g: &EmbeddedDigraph, v: VertexId, seen: &mut [bool], depth: usize) -> bool {
        if depth == g.n() {
            return true;
        }
        for inc in g.rotation(v).iter().filter(|i| i.outgoing) {
            let w = inc.neighbor;
            if !seen[w.0] {
                seen[w.0] = true;
                if dfs(g, w, seen, depth + 1) {
                    return true;
                }
                seen[w.0] = false;
            }
        }
        false
    }
    let mut seen = vec![false; n];
    seen[g.source().0] = true;
    Ok(dfs(g, g.source(), &mut seen, 1))
}

/// Median test straight from the definition: common successor-predecessors
/// of the edge's endpoints exist on both sides of it.
pub fn is_median_by_definition(g: &OTStDigraph, e: DirectedEdge) -> bool {
    let graph = g.graph();
    if !graph.has_edge(e.tail, e.head) {
        return false;
    }
    let (x, y) = (g.cycle_position(e.tail), g.cycle_position(e.head));
    let (lo, hi) = (x.min(y), x.max(y));
    let mut sides = [false, false];
    for a in graph.vertices() {
        if graph.has_edge(e.tail, a) && graph.has_edge(a, e.head) {
            let p = g.cycle_position(a);
            sides[usize::from(lo < p && p < hi)] = true;
        }
    }
    sides[0] && sides[1]
}

/// Number of rhombi of `g` whose four vertices all lie in `p`.
pub fn rhombi_inside(g: &OTStDigraph, p: &StPolygon) -> usize {
    let graph = g.graph();
    let mut member = vec![false; g.n()];
    for v in p.vertices() {
        member[v.0] = true;
    }
    (0..graph.m())
        .filter_map(|i| rhombus_at(graph, crate::graph::EdgeId(i)))
        .filter(|r| {
            [r.source, r.sink, r.left_apex, r.right_apex]
                .iter()
                .all(|v| member[v.0])
        })
        .count()
}

/// Structural problems with a reported polygon: chains must follow the
/// boundary, every edge between the two chains must be the median or touch
/// the source or sink, and the vertex set must match the definitional
/// maximal polygon.
pub fn polygon_defects(g: &OTStDigraph, p: &StPolygon) -> Vec<String> {
    let graph = g.graph();
    let mut out = Vec::new();
    if !graph.has_edge(p.source, p.sink) {
        out.push("median missing".to_string());
    }
    if p.left_chain.is_empty() || p.right_chain.is_empty() {
        out.push("empty chain".to_string());
        return out;
    }
    for side in [Side::Left, Side::Right] {
        let chain = p.chain(side);
        let mut walk = vec![p.source];
        walk.extend_from_slice(chain);
        walk.push(p.sink);
        for w in walk.windows(2) {
            if !graph.has_edge(w[0], w[1]) {
                out.push(format!(
                    "{side} chain breaks at {}",
                    graph.edge_label(DirectedEdge::new(w[0], w[1]))
                ));
            }
        }
    }
    let mut member = vec![false; g.n()];
    for v in p.vertices() {
        member[v.0] = true;
    }
    for e in graph.edges() {
        if !(member[e.tail.0] && member[e.head.0]) {
            continue;
        }
        let one_sided = [Side::Left, Side::Right].iter().any(|&s| {
            let c = p.chain(s);
            c.contains(&e.tail) && c.contains(&e.head)
        });
        if !(one_sided || e.tail == p.source || e.head == p.sink) {
            out.push(format!("stray edge {}", graph.edge_label(*e)));
        }
    }
    let mut expected = polygon_vertices_by_definition(g, p.median);
    let mut got: Vec<VertexId> = p.vertices().collect();
    expected.sort();
    got.sort();
    if expected != got {
        out.push("vertex set differs from the maximal polygon".to_string());
    }
    out
}

fn reachable_from(g: &EmbeddedDigraph, v: VertexId) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![v];
    seen[v.0] = true;
    while let Some(x) = stack.pop() {
        for inc in g.rotation(x).iter().filter(|i| i.outgoing) {
            if !std::mem::replace(&mut seen[inc.neighbor.0], true) {
                stack.push(inc.neighbor);
            }
        }
    }
    seen
}

/// Vertices of the maximal st-polygon with the given median: the interval
/// of all vertices on some directed path from its source to its sink.
pub fn polygon_vertices_by_definition(g: &OTStDigraph, median: DirectedEdge) -> Vec<VertexId> {
    let graph = g.graph();
    let from_u = reachable_from(graph, median.tail);
    graph
        .vertices()
        .filter(|&x| from_u[x.0] && reachable_from(graph, x)[median.head.0])
        .collect()
}
