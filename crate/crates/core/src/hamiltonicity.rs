//! Rhombus detection and hamiltonian paths of triangulated st-digraphs.
//!
//! A triangulated st-digraph has a hamiltonian path exactly when it contains
//! no rhombus; for acyclic digraphs the path, if any, is the unique
//! topological order.

use crate::error::GraphError;
use crate::graph::{Dart, DirectedEdge, EdgeId, EmbeddedDigraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rhombus {
    pub source: VertexId,
    pub sink: VertexId,
    /// Apex of the face left of the median.
    pub left_apex: VertexId,
    /// Apex of the face right of the median.
    pub right_apex: VertexId,
    pub median: DirectedEdge,
}

impl Rhombus {
    /// Checks the rhombus against `g`: all five edges present and the two
    /// faces beside the median are exactly its triangles.
    pub fn is_valid_in(&self, g: &EmbeddedDigraph) -> bool {
        let (s, t, a, b) = (self.source, self.sink, self.left_apex, self.right_apex);
        let edges_ok = [(s, a), (a, t), (s, b), (b, t), (s, t)]
            .iter()
            .all(|&(x, y)| g.has_edge(x, y));
        let Some(e) = g.find_edge(s, t) else {
            return false;
        };
        edges_ok && g.left_apex(e, s) == Some(a) && g.right_apex(e, s) == Some(b)
    }
}

/// Apex `a` of the interior triangle left of the dart `x -> y` when the
/// triangle's other two edges are oriented `x -> a -> y` (`forward`) or
/// `y -> a -> x`. Reads orientations off the rotation, no edge lookups.
fn oriented_apex(g: &EmbeddedDigraph, d: Dart, forward: bool) -> Option<VertexId> {
    let f = g.face_of(d);
    if f == g.outer_face() || g.faces()[f].len() != 3 {
        return None;
    }
    let (y, s2) = g.next_in_face(d);
    let (a, s3) = g.next_in_face((y, s2));
    // At y the edge to a is incoming iff a -> y; at a the edge to x is
    // incoming iff x -> a.
    let into_y = !g.rotation(y)[s2].outgoing;
    let from_x = !g.rotation(a)[s3].outgoing;
    (into_y == forward && from_x == forward).then_some(a)
}

/// The rhombus with median `e`, if both faces beside `e` are interior
/// triangles whose apex lies between the endpoints of `e`.
pub fn rhombus_at(g: &EmbeddedDigraph, e: EdgeId) -> Option<Rhombus> {
    let edge = g.edge(e);
    let (u, v) = (edge.tail, edge.head);
    let a = oriented_apex(g, g.dart(e, u), true)?;
    let b = oriented_apex(g, g.dart(e, v), false)?;
    Some(Rhombus {
        source: u,
        sink: v,
        left_apex: a,
        right_apex: b,
        median: edge,
    })
}

/// All rhombi of a triangulated st-digraph, one per median, ordered by the
/// median's tail then head.
pub fn find_rhombi(g: &EmbeddedDigraph) -> Result<Vec<Rhombus>, GraphError> {
    for (i, f) in g.faces().iter().enumerate() {
        if i != g.outer_face() && f.len() != 3 {
            let walk: Vec<&str> = f.vertices().map(|v| g.name(v)).collect();
            return Err(GraphError::NonTriangularFace(walk.join(",")));
        }
    }
    let mut found: Vec<Rhombus> = (0..g.m())
        .filter_map(|i| rhombus_at(g, EdgeId(i)))
        .collect();
    found.sort_by_key(|r| (r.median.tail, r.median.head));
    Ok(found)
}

/// The unique topological order when each consecutive pair is an edge.
pub fn hamiltonian_path(g: &EmbeddedDigraph) -> Option<Vec<VertexId>> {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for e in g.edges() {
        indeg[e.head.0] += 1;
    }
    let mut sources = g.vertices().filter(|v| indeg[v.0] == 0);
    let mut current = sources.next()?;
    if sources.next().is_some() {
        return None;
    }
    let mut path = Vec::with_capacity(n);
    loop {
        path.push(current);
        let mut next = None;
        for inc in g.rotation(current).iter().filter(|i| i.outgoing) {
            let w = inc.neighbor;
            indeg[w.0] -= 1;
            if indeg[w.0] == 0 {
                if next.is_some() {
                    // two candidates: the order is not unique
                    return None;
                }
                next = Some(w);
            }
        }
        match next {
            Some(w) => current = w,
            None => break,
        }
    }
    (path.len() == n).then_some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{
        counterexample_polygon, rhombus, stacked_polygons, triangle, with_interior_vertices,
    };

    #[test]
    fn single_rhombus() {
        let g = rhombus();
        let r = find_rhombi(g.graph()).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].is_valid_in(g.graph()));
        assert_eq!(g.graph().edge_label(r[0].median), "s->t");
        assert!(hamiltonian_path(g.graph()).is_none());
    }

    #[test]
    fn triangle_path() {
        let g = triangle();
        assert!(find_rhombi(g.graph()).unwrap().is_empty());
        let names: Vec<&str> = hamiltonian_path(g.graph())
            .unwrap()
            .iter()
            .map(|&v| g.graph().name(v))
            .collect();
        assert_eq!(names, ["s", "v", "t"]);
    }

    #[test]
    fn one_rhombus_per_stacked_polygon() {
        assert_eq!(find_rhombi(stacked_polygons(5).graph()).unwrap().len(), 5);
        assert_eq!(
            find_rhombi(counterexample_polygon().graph()).unwrap().len(),
            1
        );
    }

    #[test]
    fn interior_vertices_keep_the_rhombus() {
        for seed in 0..10 {
            let g = with_interior_vertices(rhombus().graph(), 2, seed);
            let r = find_rhombi(&g).unwrap();
            assert_eq!(r.is_empty(), hamiltonian_path(&g).is_some());
        }
    }
}
