//! Median detection, maximal st-polygons and the st-polygon decomposition.
//!
//! A maximal st-polygon covers the strip of the graph between its lower
//! limiting edge (leaving its source towards the opposite chain) and its
//! upper limiting edge (entering its sink from the opposite chain). Both are
//! read off per-vertex extremes precomputed by [`OTStDigraph::classify`], so
//! each median costs O(1) plus the size of the polygon it reports.

use crate::error::{GraphError, SolveError};
use crate::graph::{DirectedEdge, EdgeId, OTStDigraph, Side, VertexId, VertexSide};
use crate::hamiltonicity::rhombus_at;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StPolygon {
    pub source: VertexId,
    pub sink: VertexId,
    pub median: DirectedEdge,
    /// The polygon's own left chain, bottom to top, without source and sink.
    pub left_chain: Vec<VertexId>,
    pub right_chain: Vec<VertexId>,
    /// `None` when the polygon reaches down to the graph source.
    pub lower_limit: Option<DirectedEdge>,
    /// `None` when the polygon reaches up to the graph sink.
    pub upper_limit: Option<DirectedEdge>,
    pub left_from_source: Vec<bool>,
    pub left_to_sink: Vec<bool>,
    pub right_from_source: Vec<bool>,
    pub right_to_sink: Vec<bool>,
}

impl StPolygon {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::once(self.source)
            .chain(self.left_chain.iter().copied())
            .chain(self.right_chain.iter().copied())
            .chain(std::iter::once(self.sink))
    }

    pub fn vertex_count(&self) -> usize {
        self.left_chain.len() + self.right_chain.len() + 2
    }

    pub fn chain(&self, side: Side) -> &[VertexId] {
        match side {
            Side::Left => &self.left_chain,
            Side::Right => &self.right_chain,
        }
    }

    fn source_flags(&self, side: Side) -> &[bool] {
        match side {
            Side::Left => &self.left_from_source,
            Side::Right => &self.right_from_source,
        }
    }

    fn sink_flags(&self, side: Side) -> &[bool] {
        match side {
            Side::Left => &self.left_to_sink,
            Side::Right => &self.right_to_sink,
        }
    }

    /// Chords `(v, sink)` from the `side` chain, excluding its top vertex,
    /// ordered from the top down.
    pub fn sink_chords_below_top(&self, side: Side) -> impl Iterator<Item = DirectedEdge> + '_ {
        let chain = self.chain(side);
        let flags = self.sink_flags(side);
        let sink = self.sink;
        (0..chain.len().saturating_sub(1))
            .rev()
            .filter(move |&i| flags[i])
            .map(move |i| DirectedEdge::new(chain[i], sink))
    }

    /// Chords `(source, v)` to the `side` chain, excluding its bottom vertex,
    /// ordered from the top down.
    pub fn source_chords_above_bottom(
        &self,
        side: Side,
    ) -> impl Iterator<Item = DirectedEdge> + '_ {
        let chain = self.chain(side);
        let flags = self.source_flags(side);
        let source = self.source;
        (1..chain.len())
            .rev()
            .filter(move |&i| flags[i])
            .map(move |i| DirectedEdge::new(source, chain[i]))
    }

    /// Vertices that can be shared with the element above.
    fn top_vertices(&self) -> [Option<VertexId>; 2] {
        [Some(self.sink), self.upper_limit.map(|e| e.tail)]
    }

    fn bottom_vertices(&self) -> [Option<VertexId>; 2] {
        [Some(self.source), self.lower_limit.map(|e| e.head)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum DecompositionElement {
    Polygon(StPolygon),
    FreeVertex(VertexId),
}

impl DecompositionElement {
    /// Source of a polygon, the vertex itself for a free vertex.
    pub fn representative(&self) -> VertexId {
        match self {
            DecompositionElement::Polygon(p) => p.source,
            DecompositionElement::FreeVertex(v) => *v,
        }
    }

    pub fn sink(&self) -> VertexId {
        match self {
            DecompositionElement::Polygon(p) => p.sink,
            DecompositionElement::FreeVertex(v) => *v,
        }
    }

    pub fn as_polygon(&self) -> Option<&StPolygon> {
        match self {
            DecompositionElement::Polygon(p) => Some(p),
            DecompositionElement::FreeVertex(_) => None,
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        match self {
            DecompositionElement::Polygon(p) => p.vertices().collect(),
            DecompositionElement::FreeVertex(v) => vec![*v],
        }
    }

    fn top_vertices(&self) -> [Option<VertexId>; 2] {
        match self {
            DecompositionElement::Polygon(p) => p.top_vertices(),
            DecompositionElement::FreeVertex(v) => [Some(*v), None],
        }
    }

    fn bottom_vertices(&self) -> [Option<VertexId>; 2] {
        match self {
            DecompositionElement::Polygon(p) => p.bottom_vertices(),
            DecompositionElement::FreeVertex(v) => [Some(*v), None],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub elements: Vec<DecompositionElement>,
    /// `shared[i]` counts the vertices shared by elements `i` and `i + 1`.
    pub shared: Vec<u8>,
}

impl Decomposition {
    pub fn polygon_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| e.as_polygon().is_some())
            .count()
    }

    pub fn polygons(&self) -> impl Iterator<Item = &StPolygon> {
        self.elements.iter().filter_map(|e| e.as_polygon())
    }
}

fn edge_id(g: &OTStDigraph, e: DirectedEdge) -> Result<EdgeId, GraphError> {
    g.graph().find_edge(e.tail, e.head).ok_or_else(|| {
        GraphError::UnknownEdge(g.graph().name(e.tail).into(), g.graph().name(e.head).into())
    })
}

/// Whether `e` is the median of some st-polygon: both faces beside `e` are
/// interior triangles whose apex lies between the endpoints of `e`. Two
/// rotation lookups and four edge tests.
pub fn is_median(g: &OTStDigraph, e: DirectedEdge) -> Result<bool, GraphError> {
    let id = edge_id(g, e)?;
    Ok(rhombus_at(g.graph(), id).is_some())
}

/// The inclusion-maximal st-polygon whose median is `median`.
pub fn maximal_polygon(g: &OTStDigraph, median: DirectedEdge) -> Result<StPolygon, SolveError> {
    let label = || g.graph().edge_label(median);
    let id = edge_id(g, median).map_err(|_| SolveError::NotMedian(label()))?;
    if rhombus_at(g.graph(), id).is_none() {
        return Err(SolveError::NotMedian(label()));
    }
    let graph = g.graph();
    strip_polygon(
        g,
        median,
        |w| graph.has_edge(median.tail, w),
        |w| graph.has_edge(w, median.head),
    )
}

/// The strip between the limiting edges of a known median. `from_source`
/// and `to_sink` test adjacency to the median's endpoints.
fn strip_polygon(
    g: &OTStDigraph,
    median: DirectedEdge,
    from_source: impl Fn(VertexId) -> bool,
    to_sink: impl Fn(VertexId) -> bool,
) -> Result<StPolygon, SolveError> {
    let label = || g.graph().edge_label(median);
    let (u, v) = (median.tail, median.head);
    let (k, m) = (g.left().len(), g.right().len());
    let missing =
        |what: &str| SolveError::Internal(format!("{what} missing for median {}", label()));

    let (low_l, low_r, lower_limit) = match g.vertex_side(u) {
        VertexSide::Source => (0, 0, None),
        VertexSide::Left(i) => {
            let p = g
                .lowest_out_opposite(u)
                .ok_or_else(|| missing("lower limit"))?;
            (
                i,
                p,
                Some(DirectedEdge::new(u, g.chain_vertex(Side::Right, p))),
            )
        }
        VertexSide::Right(j) => {
            let p = g
                .lowest_out_opposite(u)
                .ok_or_else(|| missing("lower limit"))?;
            (
                p,
                j,
                Some(DirectedEdge::new(u, g.chain_vertex(Side::Left, p))),
            )
        }
        VertexSide::Sink => return Err(SolveError::NotMedian(label())),
    };
    let (high_l, high_r, upper_limit) = match g.vertex_side(v) {
        VertexSide::Sink => (k + 1, m + 1, None),
        VertexSide::Left(i) => {
            let p = g
                .highest_in_opposite(v)
                .ok_or_else(|| missing("upper limit"))?;
            (
                i,
                p,
                Some(DirectedEdge::new(g.chain_vertex(Side::Right, p), v)),
            )
        }
        VertexSide::Right(j) => {
            let p = g
                .highest_in_opposite(v)
                .ok_or_else(|| missing("upper limit"))?;
            (
                p,
                j,
                Some(DirectedEdge::new(g.chain_vertex(Side::Left, p), v)),
            )
        }
        VertexSide::Source => return Err(SolveError::NotMedian(label())),
    };
    if low_l > high_l || low_r > high_r {
        return Err(SolveError::Internal(format!(
            "empty strip for median {}",
            label()
        )));
    }
    let (s, t) = (g.source(), g.sink());
    let own = |side: Side, lo: usize, hi: usize| -> Vec<VertexId> {
        (lo..=hi)
            .map(|p| g.chain_vertex(side, p))
            .filter(|&w| w != u && w != v && w != s && w != t)
            .collect()
    };
    let left_chain = own(Side::Left, low_l, high_l);
    let right_chain = own(Side::Right, low_r, high_r);
    let flags = |chain: &[VertexId], test: &dyn Fn(VertexId) -> bool| -> Vec<bool> {
        chain.iter().map(|&w| test(w)).collect()
    };
    Ok(StPolygon {
        source: u,
        sink: v,
        median,
        left_from_source: flags(&left_chain, &from_source),
        left_to_sink: flags(&left_chain, &to_sink),
        right_from_source: flags(&right_chain, &from_source),
        right_to_sink: flags(&right_chain, &to_sink),
        left_chain,
        right_chain,
        lower_limit,
        upper_limit,
    })
}

/// All maximal st-polygons and free vertices, ordered by the topological
/// number of their representatives.
pub fn decompose(g: &OTStDigraph) -> Decomposition {
    let graph = g.graph();
    let n = graph.n();
    let mut topo_index = vec![0usize; n];
    for (i, v) in graph.topological_order().iter().enumerate() {
        topo_index[v.0] = i;
    }

    // Stamps mark the out-neighbours of the current source and the
    // in-neighbours of the current sink, so chord flags need no lookups.
    let mut out_stamp = vec![usize::MAX; n];
    let mut in_stamp = vec![usize::MAX; n];
    let mut in_polygon = vec![false; n];
    let mut by_rank: Vec<Option<DecompositionElement>> = vec![None; n];
    for i in 0..graph.m() {
        // A polygon contains exactly one rhombus, so each median yields a
        // distinct polygon.
        let Some(r) = rhombus_at(graph, EdgeId(i)) else {
            continue;
        };
        for inc in graph.rotation(r.source).iter().filter(|inc| inc.outgoing) {
            out_stamp[inc.neighbor.0] = i;
        }
        for inc in graph.rotation(r.sink).iter().filter(|inc| !inc.outgoing) {
            in_stamp[inc.neighbor.0] = i;
        }
        let p = strip_polygon(g, r.median, |w| out_stamp[w.0] == i, |w| in_stamp[w.0] == i)
            .expect("median yields a polygon");
        for w in p.vertices() {
            in_polygon[w.0] = true;
        }
        let rank = topo_index[p.source.0];
        debug_assert!(by_rank[rank].is_none(), "two polygons share a source");
        by_rank[rank] = Some(DecompositionElement::Polygon(p));
    }
    for v in graph.vertices().filter(|v| !in_polygon[v.0]) {
        by_rank[topo_index[v.0]] = Some(DecompositionElement::FreeVertex(v));
    }
    let elements: Vec<DecompositionElement> = by_rank.into_iter().flatten().collect();

    let shared = elements
        .windows(2)
        .map(|w| {
            let top = w[0].top_vertices();
            let bottom = w[1].bottom_vertices();
            let mut count = 0u8;
            for a in top.iter().flatten() {
                if bottom.iter().flatten().any(|b| b == a) {
                    count += 1;
                }
            }
            count
        })
        .collect();
    Decomposition { elements, shared }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{counterexample_polygon, rhombus, stacked_polygons, triangle};

    #[test]
    fn triangle_is_all_free() {
        let d = decompose(&triangle());
        assert_eq!(d.elements.len(), 3);
        assert_eq!(d.polygon_count(), 0);
        assert_eq!(d.shared, vec![0, 0]);
    }

    #[test]
    fn rhombus_is_one_polygon() {
        let g = rhombus();
        let d = decompose(&g);
        assert_eq!(d.elements.len(), 1);
        let p = d.polygons().next().unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!((p.source, p.sink), (g.source(), g.sink()));
        assert!(p.lower_limit.is_none() && p.upper_limit.is_none());
    }

    #[test]
    fn median_checks() {
        let g = rhombus();
        let gr = g.graph();
        let a = gr.vertex_by_name("a").unwrap();
        assert!(is_median(&g, DirectedEdge::new(g.source(), g.sink())).unwrap());
        assert!(!is_median(&g, DirectedEdge::new(g.source(), a)).unwrap());
        assert!(is_median(&g, DirectedEdge::new(a, g.source())).is_err());
        assert!(matches!(
            maximal_polygon(&g, DirectedEdge::new(g.source(), a)),
            Err(SolveError::NotMedian(_))
        ));
    }

    #[test]
    fn stacked_polygons_share_two() {
        let d = decompose(&stacked_polygons(4));
        assert_eq!(d.polygon_count(), 4);
        // s and t stay free: the first median starts at l1, the last ends at r9.
        assert_eq!(d.elements.len(), 6);
        assert_eq!(d.shared, vec![0, 2, 2, 2, 0]);
    }

    #[test]
    fn chain_lengths() {
        let g = counterexample_polygon();
        let d = decompose(&g);
        let p = d.polygons().next().unwrap();
        assert_eq!(p.chain(Side::Left).len(), 8);
        assert_eq!(p.chain(Side::Right).len(), 4);
        assert_eq!(p.vertex_count(), g.n());
    }
}
