//! Independent checker for HP-completion results.
//!
//! Crossing lists are checked against the boundary cycle alone: a chord
//! crosses a completion edge exactly when their endpoints interleave, so the
//! expected count for each completion edge is obtained by counting edges
//! with one endpoint strictly inside its arc (offline, with a Fenwick tree).

use std::fmt;

use crate::graph::{topological_order, DirectedEdge, EdgeId, OTStDigraph, VertexId};
use crate::solver::HpCompletionResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotHamiltonian(String),
    EdgeAgainstPath(String),
    CompletionMismatch(String),
    NotCrossed {
        completion: String,
        edge: String,
    },
    WrongCrossingCount {
        completion: String,
        listed: usize,
        expected: usize,
    },
    CrossingOrder(String),
    CrossedTwice(String),
    CompletionEdgesCross(String, String),
    TotalMismatch {
        claimed: usize,
        actual: usize,
    },
    CyclicExtension,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHamiltonian(m) => write!(f, "not a hamiltonian path: {m}"),
            Violation::EdgeAgainstPath(e) => write!(f, "edge {e} points backwards along the path"),
            Violation::CompletionMismatch(m) => write!(f, "completion set mismatch: {m}"),
            Violation::NotCrossed { completion, edge } => {
                write!(f, "{completion} lists {edge}, which it does not cross")
            }
            Violation::WrongCrossingCount {
                completion,
                listed,
                expected,
            } => {
                write!(
                    f,
                    "{completion} lists {listed} crossings, geometry gives {expected}"
                )
            }
            Violation::CrossingOrder(c) => write!(f, "crossings of {c} are out of order"),
            Violation::CrossedTwice(e) => write!(f, "edge {e} is crossed more than once"),
            Violation::CompletionEdgesCross(a, b) => {
                write!(f, "completion edges {a} and {b} cross")
            }
            Violation::TotalMismatch { claimed, actual } => {
                write!(f, "total_crossings = {claimed}, lists sum to {actual}")
            }
            Violation::CyclicExtension => write!(f, "HP-extended digraph has a cycle"),
        }
    }
}

/// Indices of two strictly interleaving intervals `a < c < b < d`, if any.
/// Intervals sharing an endpoint do not interleave.
pub(crate) fn interleaving_pair(intervals: &[(u64, u64)]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by_key(|&i| (intervals[i].0, std::cmp::Reverse(intervals[i].1)));
    let mut open: Vec<usize> = Vec::new();
    for i in order {
        let (a, b) = intervals[i];
        while open.last().is_some_and(|&j| intervals[j].1 <= a) {
            open.pop();
        }
        if let Some(&j) = open.last() {
            if intervals[j].1 < b {
                return Some((j, i));
            }
        }
        open.push(i);
    }
    None
}

/// Indices `0..keys.len()` stably ordered by key, for keys below `bound`.
fn counting_order(keys: &[usize], bound: usize) -> Vec<usize> {
    let mut start = vec![0usize; bound + 1];
    for &k in keys {
        start[k + 1] += 1;
    }
    for i in 0..bound {
        start[i + 1] += start[i];
    }
    let mut order = vec![0usize; keys.len()];
    for (i, &k) in keys.iter().enumerate() {
        order[start[k]] = i;
        start[k] += 1;
    }
    order
}

struct Fenwick(Vec<usize>);

impl Fenwick {
    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of entries at indices `< i`.
    fn prefix(&self, i: usize) -> usize {
        let (mut i, mut s) = (i, 0);
        while i > 0 {
            s += self.0[i];
            i &= i - 1;
        }
        s
    }
}

/// For each chord `(u, w)`, the number of edges of `g` whose endpoints
/// interleave with it on the outer cycle.
pub fn interleaving_counts(g: &OTStDigraph, chords: &[DirectedEdge]) -> Vec<usize> {
    let graph = g.graph();
    let n = g.n();
    let pos = |v: VertexId| g.cycle_position(v);
    let mut by_pos = vec![VertexId(0); n];
    for v in graph.vertices() {
        by_pos[pos(v)] = v;
    }
    let mut deg_prefix = vec![0usize; n + 1];
    for p in 0..n {
        deg_prefix[p + 1] = deg_prefix[p] + graph.degree(by_pos[p]);
    }
    let spans: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (pos(e.tail), pos(e.head));
            (a.min(b), a.max(b))
        })
        .collect();
    let his: Vec<usize> = spans.iter().map(|&(_, hi)| hi).collect();
    let spans: Vec<(usize, usize)> = counting_order(&his, n)
        .into_iter()
        .map(|i| spans[i])
        .collect();

    // Open arcs (lo, hi) strictly between the chord endpoints.
    let arcs: Vec<Option<(usize, usize)>> = chords
        .iter()
        .map(|c| {
            let (a, b) = (pos(c.tail), pos(c.head));
            let (a, b) = (a.min(b), a.max(b));
            (b >= a + 2).then_some((a + 1, b - 1))
        })
        .collect();
    let query_his: Vec<usize> = arcs.iter().map(|a| a.map_or(0, |(_, hi)| hi)).collect();
    let queries = counting_order(&query_his, n)
        .into_iter()
        .filter(|&i| arcs[i].is_some());

    let mut inside = vec![0usize; chords.len()];
    let mut tree = Fenwick(vec![0; n + 1]);
    let mut next = 0;
    for q in queries {
        let (lo, hi) = arcs[q].expect("filtered");
        while next < spans.len() && spans[next].1 <= hi {
            tree.add(spans[next].0);
            next += 1;
        }
        inside[q] = next - tree.prefix(lo);
    }

    chords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let Some((lo, hi)) = arcs[i] else { return 0 };
            let in_arc = |v: VertexId| (lo..=hi).contains(&pos(v));
            let to_end = |x: VertexId| {
                graph
                    .rotation(x)
                    .iter()
                    .filter(|inc| in_arc(inc.neighbor))
                    .count()
            };
            deg_prefix[hi + 1] - deg_prefix[lo] - 2 * inside[i] - to_end(c.tail) - to_end(c.head)
        })
        .collect()
}

/// Whether `e` and the chord `(u, w)` cross: their endpoints are distinct
/// and interleave on the outer cycle.
pub fn chords_cross(g: &OTStDigraph, e: DirectedEdge, u: VertexId, w: VertexId) -> bool {
    if e.touches(u) || e.touches(w) {
        return false;
    }
    let (a, b) = (g.cycle_position(u), g.cycle_position(w));
    let (a, b) = (a.min(b), a.max(b));
    let inside = |v: VertexId| (a + 1..b).contains(&g.cycle_position(v));
    inside(e.tail) != inside(e.head)
}

/// Distances used to order crossings along `(u, w)`: how far from `u` the
/// crossed edge's endpoints lie on either arc.
fn crossing_key(g: &OTStDigraph, e: DirectedEdge, u: VertexId, w: VertexId) -> (usize, usize) {
    let n = g.n();
    let (pu, pw) = (g.cycle_position(u), g.cycle_position(w));
    let (a, b) = (pu.min(pw), pu.max(pw));
    let (x, y) = (g.cycle_position(e.tail), g.cycle_position(e.head));
    let (i, o) = if a < x && x < b { (x, y) } else { (y, x) };
    if pu < pw {
        (i - pu, (pu + n - o) % n)
    } else {
        (pu - i, (o + n - pu) % n)
    }
}

pub fn verify_solution(g: &OTStDigraph, r: &HpCompletionResult) -> Vec<Violation> {
    let graph = g.graph();
    let n = g.n();
    let mut out = Vec::new();

    let mut rank = vec![usize::MAX; n];
    for (i, &v) in r.path.iter().enumerate() {
        if v.0 >= n {
            out.push(Violation::NotHamiltonian(format!(
                "vertex index {} out of range",
                v.0
            )));
            return out;
        }
        if rank[v.0] != usize::MAX {
            out.push(Violation::NotHamiltonian(format!(
                "{} visited twice",
                graph.name(v)
            )));
            return out;
        }
        rank[v.0] = i;
    }
    if r.path.len() != n {
        out.push(Violation::NotHamiltonian(format!(
            "{} of {n} vertices",
            r.path.len()
        )));
        return out;
    }
    for e in graph.edges() {
        if rank[e.tail.0] > rank[e.head.0] {
            out.push(Violation::EdgeAgainstPath(graph.edge_label(*e)));
        }
    }

    let expected: Vec<DirectedEdge> = r
        .path
        .windows(2)
        .filter(|w| !graph.has_edge(w[0], w[1]))
        .map(|w| DirectedEdge::new(w[0], w[1]))
        .collect();
    let listed: Vec<DirectedEdge> = r.completion.iter().map(|c| c.edge).collect();
    if expected != listed {
        let show = |es: &[DirectedEdge]| {
            es.iter()
                .map(|&e| graph.edge_label(e))
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push(Violation::CompletionMismatch(format!(
            "path needs [{}], result lists [{}]",
            show(&expected),
            show(&listed)
        )));
        return out;
    }

    let counts = interleaving_counts(g, &listed);
    let mut times_crossed = vec![0usize; graph.m()];
    let mut crossed_ids: Vec<Vec<EdgeId>> = Vec::with_capacity(listed.len());
    for (c, &count) in r.completion.iter().zip(&counts) {
        let (u, w) = (c.edge.tail, c.edge.head);
        let label = graph.edge_label(c.edge);
        let mut ids = Vec::with_capacity(c.crossings.len());
        for &e in &c.crossings {
            match graph.find_edge(e.tail, e.head) {
                Some(id) if chords_cross(g, e, u, w) => ids.push(id),
                _ => out.push(Violation::NotCrossed {
                    completion: label.clone(),
                    edge: graph.edge_label(e),
                }),
            }
        }
        let keys: Vec<(usize, usize)> = c
            .crossings
            .iter()
            .map(|&e| crossing_key(g, e, u, w))
            .collect();
        let ordered = keys
            .windows(2)
            .all(|k| k[0].0 <= k[1].0 && k[0].1 <= k[1].1 && k[0] != k[1]);
        if !ordered {
            out.push(Violation::CrossingOrder(label.clone()));
        }
        if c.crossings.len() != count {
            out.push(Violation::WrongCrossingCount {
                completion: label,
                listed: c.crossings.len(),
                expected: count,
            });
        }
        for &id in &ids {
            times_crossed[id.0] += 1;
        }
        crossed_ids.push(ids);
    }
    for (i, &t) in times_crossed.iter().enumerate() {
        if t > 1 {
            out.push(Violation::CrossedTwice(
                graph.edge_label(graph.edge(EdgeId(i))),
            ));
        }
    }
    let actual: usize = r.completion.iter().map(|c| c.crossings.len()).sum();
    if actual != r.total_crossings {
        out.push(Violation::TotalMismatch {
            claimed: r.total_crossings,
            actual,
        });
    }

    let spans: Vec<(u64, u64)> = listed
        .iter()
        .map(|e| {
            let (a, b) = (
                g.cycle_position(e.tail) as u64,
                g.cycle_position(e.head) as u64,
            );
            (a.min(b), a.max(b))
        })
        .collect();
    if let Some((i, j)) = interleaving_pair(&spans) {
        out.push(Violation::CompletionEdgesCross(
            graph.edge_label(listed[i]),
            graph.edge_label(listed[j]),
        ));
    }

    // HP-extended digraph: one dummy vertex per crossing.
    let mut ext: Vec<DirectedEdge> = Vec::with_capacity(graph.m() + n + 2 * actual);
    let mut dummies_on: Vec<Vec<VertexId>> = vec![Vec::new(); graph.m()];
    let mut next_dummy = n;
    for (c, ids) in r.completion.iter().zip(&crossed_ids) {
        let mut cur = c.edge.tail;
        for &id in ids {
            let d = VertexId(next_dummy);
            next_dummy += 1;
            ext.push(DirectedEdge::new(cur, d));
            dummies_on[id.0].push(d);
            cur = d;
        }
        ext.push(DirectedEdge::new(cur, c.edge.head));
    }
    for (i, e) in graph.edges().iter().enumerate() {
        let mut cur = e.tail;
        for &d in &dummies_on[i] {
            ext.push(DirectedEdge::new(cur, d));
            cur = d;
        }
        ext.push(DirectedEdge::new(cur, e.head));
    }
    if topological_order(next_dummy, &ext).is_none() {
        out.push(Violation::CyclicExtension);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{counterexample_polygon, rhombus};
    use crate::solver::solve;

    #[test]
    fn solver_output_is_clean() {
        for g in [rhombus(), counterexample_polygon()] {
            assert!(verify_solution(&g, &solve(&g).unwrap()).is_empty());
        }
    }

    #[test]
    fn catches_tampering() {
        let g = rhombus();
        let good = solve(&g).unwrap();

        let mut r = good.clone();
        r.total_crossings = 0;
        assert!(verify_solution(&g, &r).contains(&Violation::TotalMismatch {
            claimed: 0,
            actual: 1
        }));

        let mut r = good.clone();
        r.path.pop();
        assert!(matches!(
            verify_solution(&g, &r)[0],
            Violation::NotHamiltonian(_)
        ));

        let mut r = good.clone();
        r.path.swap(0, 1);
        assert!(verify_solution(&g, &r)
            .iter()
            .any(|v| matches!(v, Violation::EdgeAgainstPath(_))));

        let mut r = good.clone();
        r.completion[0].crossings.clear();
        r.total_crossings = 0;
        assert!(verify_solution(&g, &r)
            .iter()
            .any(|v| matches!(v, Violation::WrongCrossingCount { .. })));

        let mut r = good;
        r.completion.clear();
        assert!(verify_solution(&g, &r)
            .iter()
            .any(|v| matches!(v, Violation::CompletionMismatch(_))));
    }

    #[test]
    fn interleaving_intervals() {
        assert_eq!(interleaving_pair(&[(0, 5), (1, 2), (3, 4)]), None);
        assert!(interleaving_pair(&[(0, 3), (2, 5)]).is_some());
        assert_eq!(interleaving_pair(&[(0, 1), (1, 2)]), None);
    }

    #[test]
    fn chord_counts() {
        let g = counterexample_polygon();
        let gr = g.graph();
        let v = |n| gr.vertex_by_name(n).unwrap();
        let chords = [
            DirectedEdge::new(v("v4"), v("u1")),
            DirectedEdge::new(v("u8"), v("v1")),
        ];
        assert_eq!(interleaving_counts(&g, &chords), vec![5, 5]);
        let st = DirectedEdge::new(g.source(), g.sink());
        assert!(chords_cross(&g, st, v("v4"), v("u1")));
        assert!(!chords_cross(
            &g,
            DirectedEdge::new(v("u1"), v("u2")),
            v("v4"),
            v("u1")
        ));
    }
}
