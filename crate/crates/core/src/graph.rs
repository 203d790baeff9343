//! Embedded planar st-digraphs and the outerplanar triangulated subclass.
//!
//! Rotations are clockwise in a drawing with the source at the bottom, the
//! sink at the top and the left boundary chain on the left. Faces are traced
//! with the face on the left of every dart: the dart following `u -> v` is
//! `v -> w` where `w` is the clockwise successor of `u` around `v`. Under this
//! convention interior faces are walked counterclockwise and the outer face of
//! an OT-st-digraph is walked `s, V^l..., t, V^r reversed...`.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;
use std::fmt;

use crate::error::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedEdge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl DirectedEdge {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        DirectedEdge { tail, head }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }
}

/// One entry of a vertex rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub neighbor: VertexId,
    pub edge: EdgeId,
    pub outgoing: bool,
}

/// A position in a rotation: `(vertex, slot)` denotes the dart leaving
/// `vertex` along `rotation(vertex)[slot]`.
pub type Dart = (VertexId, usize);

#[derive(Clone, Debug)]
pub struct Face {
    /// Darts in walk order; the face lies to the left of each.
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.darts.iter().map(|&(v, _)| v)
    }
}

/// Acyclic planar digraph with a fixed rotation system, a unique source and a
/// unique sink on the outer face.
#[derive(Clone, Debug)]
pub struct EmbeddedDigraph {
    names: Vec<String>,
    edges: Vec<DirectedEdge>,
    rotation: Vec<Vec<Incidence>>,
    // slot of each edge in the rotation of its tail and of its head
    slots: Vec<[usize; 2]>,
    lookup: FxHashMap<(usize, usize), EdgeId>,
    topo: Vec<VertexId>,
    source: VertexId,
    sink: VertexId,
    faces: Vec<Face>,
    dart_face: Vec<Vec<usize>>,
    outer: usize,
}

impl EmbeddedDigraph {
    /// Builds and validates a graph.
    ///
    /// `rotation[v]` lists the neighbours of `v` in clockwise order.
    pub fn new(
        names: Vec<String>,
        edges: Vec<DirectedEdge>,
        rotation: Vec<Vec<VertexId>>,
        source: VertexId,
        sink: VertexId,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if rotation.len() != n {
            return Err(GraphError::RotationMismatch(format!(
                "{} rotation lists for {} vertices",
                rotation.len(),
                n
            )));
        }
        let name_of = |v: VertexId| names[v.0].clone();
        let mut lookup = FxHashMap::with_capacity_and_hasher(edges.len(), Default::default());
        for (i, e) in edges.iter().enumerate() {
            if e.tail.0 >= n || e.head.0 >= n {
                return Err(GraphError::UnknownVertex(format!("index in edge {i}")));
            }
            if e.tail == e.head {
                return Err(GraphError::SelfLoop(name_of(e.tail)));
            }
            let key = (e.tail.0.min(e.head.0), e.tail.0.max(e.head.0));
            if lookup.insert(key, EdgeId(i)).is_some() {
                return Err(GraphError::ParallelEdge(name_of(e.tail), name_of(e.head)));
            }
        }

        // Resolve rotation entries to incidences and record slots.
        let mut slots = vec![[usize::MAX; 2]; edges.len()];
        let mut rot = Vec::with_capacity(n);
        for (v, list) in rotation.iter().enumerate() {
            let mut incs = Vec::with_capacity(list.len());
            for (slot, &w) in list.iter().enumerate() {
                if w.0 >= n {
                    return Err(GraphError::UnknownVertex(format!(
                        "in rotation of {}",
                        names[v]
                    )));
                }
                let key = (v.min(w.0), v.max(w.0));
                let Some(&eid) = lookup.get(&key) else {
                    return Err(GraphError::RotationMismatch(format!(
                        "rotation of {} lists {} but no such edge exists",
                        names[v], names[w.0]
                    )));
                };
                let e = edges[eid.0];
                let outgoing = e.tail.0 == v;
                let k = if outgoing { 0 } else { 1 };
                if slots[eid.0][k] != usize::MAX {
                    return Err(GraphError::RotationMismatch(format!(
                        "rotation of {} lists {} twice",
                        names[v], names[w.0]
                    )));
                }
                slots[eid.0][k] = slot;
                incs.push(Incidence {
                    neighbor: w,
                    edge: eid,
                    outgoing,
                });
            }
            rot.push(incs);
        }
        for (i, s) in slots.iter().enumerate() {
            if s[0] == usize::MAX || s[1] == usize::MAX {
                let e = edges[i];
                return Err(GraphError::RotationMismatch(format!(
                    "edge {}->{} missing from a rotation",
                    names[e.tail.0], names[e.head.0]
                )));
            }
        }

        let mut g = EmbeddedDigraph {
            names,
            edges,
            rotation: rot,
            slots,
            lookup,
            topo: Vec::new(),
            source,
            sink,
            faces: Vec::new(),
            dart_face: Vec::new(),
            outer: 0,
        };
        g.topo = g.check_st_structure()?;
        g.trace_faces();
        g.check_planarity()?;
        g.check_bimodal()?;
        Ok(g)
    }

    fn check_st_structure(&self) -> Result<Vec<VertexId>, GraphError> {
        let n = self.n();
        if self.source.0 >= n || self.sink.0 >= n {
            return Err(GraphError::UnknownVertex("source or sink".into()));
        }
        let Some(order) = topological_order(n, &self.edges) else {
            return Err(GraphError::Cyclic);
        };
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.tail.0] += 1;
            indeg[e.head.0] += 1;
        }
        let sources: Vec<_> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let sinks: Vec<_> = (0..n).filter(|&v| outdeg[v] == 0).collect();
        if sources.len() > 1 {
            return Err(GraphError::MultiSource(self.join_names(&sources)));
        }
        if sinks.len() > 1 {
            return Err(GraphError::MultiSink(self.join_names(&sinks)));
        }
        if sources != [self.source.0] {
            return Err(GraphError::WrongSource(self.names[self.source.0].clone()));
        }
        if sinks != [self.sink.0] {
            return Err(GraphError::WrongSink(self.names[self.sink.0].clone()));
        }
        Ok(order)
    }

    fn join_names(&self, vs: &[usize]) -> String {
        vs.iter()
            .map(|&v| self.names[v].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn trace_faces(&mut self) {
        let mut dart_face: Vec<Vec<usize>> = self
            .rotation
            .iter()
            .map(|r| vec![usize::MAX; r.len()])
            .collect();
        let mut faces = Vec::new();
        for v in 0..self.n() {
            for slot in 0..self.rotation[v].len() {
                if dart_face[v][slot] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut darts = Vec::new();
                let mut d = (VertexId(v), slot);
                while dart_face[d.0 .0][d.1] == usize::MAX {
                    dart_face[d.0 .0][d.1] = id;
                    darts.push(d);
                    d = self.next_in_face(d);
                }
                faces.push(Face { darts });
            }
        }
        self.faces = faces;
        self.dart_face = dart_face;
        self.outer = self.pick_outer_face();
    }

    /// The outer face is the longest face through both `s` and `t`. Ties are
    /// broken towards the face whose walk does not leave `s` straight to `t`,
    /// then by face index.
    fn pick_outer_face(&self) -> usize {
        let (s, t) = (self.source, self.sink);
        let mut best: Option<(usize, bool, usize)> = None;
        for (i, f) in self.faces.iter().enumerate() {
            let has_s = f.vertices().any(|v| v == s);
            let has_t = f.vertices().any(|v| v == t);
            if !(has_s && has_t) {
                continue;
            }
            let s_to_t = f
                .darts
                .iter()
                .any(|&(v, slot)| v == s && self.rotation[v.0][slot].neighbor == t);
            let key = (f.len(), !s_to_t, usize::MAX - i);
            if best.is_none_or(|b| key > b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, i)| usize::MAX - i).unwrap_or(usize::MAX)
    }

    fn check_planarity(&self) -> Result<(), GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let (n, m, f) = (self.n() as i64, self.m() as i64, self.faces.len() as i64);
        if n - m + f != 2 {
            return Err(GraphError::NonPlanarRotation {
                vertices: n,
                edges: m,
                faces: f,
            });
        }
        if self.outer == usize::MAX {
            return Err(GraphError::SourceSinkNotOnOuterFace);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for inc in &self.rotation[v] {
                if !seen[inc.neighbor.0] {
                    seen[inc.neighbor.0] = true;
                    count += 1;
                    queue.push_back(inc.neighbor.0);
                }
            }
        }
        count == n
    }

    fn check_bimodal(&self) -> Result<(), GraphError> {
        for (v, rot) in self.rotation.iter().enumerate() {
            let d = rot.len();
            let switches = (0..d)
                .filter(|&i| rot[i].outgoing != rot[(i + 1) % d].outgoing)
                .count();
            if switches > 2 {
                return Err(GraphError::NonConsecutiveInOut(self.names[v].clone()));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n()).map(VertexId)
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> DirectedEdge {
        self.edges[id.0]
    }

    pub fn rotation(&self, v: VertexId) -> &[Incidence] {
        &self.rotation[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    /// Id of the edge `tail -> head`, if present with that orientation.
    pub fn find_edge(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        let key = (tail.0.min(head.0), tail.0.max(head.0));
        self.lookup
            .get(&key)
            .copied()
            .filter(|&id| self.edges[id.0].tail == tail)
    }

    pub fn has_edge(&self, tail: VertexId, head: VertexId) -> bool {
        self.find_edge(tail, head).is_some()
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.lookup.contains_key(&(a.0.min(b.0), a.0.max(b.0)))
    }

    /// Slot of `e` in the rotation of `v`; `v` must be an endpoint.
    pub fn slot_of(&self, e: EdgeId, v: VertexId) -> usize {
        let edge = self.edges[e.0];
        if edge.tail == v {
            self.slots[e.0][0]
        } else {
            debug_assert_eq!(edge.head, v);
            self.slots[e.0][1]
        }
    }

    pub fn next_in_face(&self, (v, slot): Dart) -> Dart {
        let inc = self.rotation[v.0][slot];
        let w = inc.neighbor;
        let back = self.slot_of(inc.edge, w);
        (w, (back + 1) % self.rotation[w.0].len())
    }

    /// The dart leaving `from` along `e`.
    pub fn dart(&self, e: EdgeId, from: VertexId) -> Dart {
        (from, self.slot_of(e, from))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_face(&self) -> usize {
        self.outer
    }

    pub fn face_of(&self, (v, slot): Dart) -> usize {
        self.dart_face[v.0][slot]
    }

    /// Third vertex of the face left of the dart `u -> v`, when that face is
    /// an interior triangle.
    pub fn left_apex(&self, e: EdgeId, from: VertexId) -> Option<VertexId> {
        let d = self.dart(e, from);
        let f = self.face_of(d);
        if f == self.outer || self.faces[f].len() != 3 {
            return None;
        }
        let (w, slot) = self.next_in_face(d);
        Some(self.rotation[w.0][slot].neighbor)
    }

    /// Third vertex of the face right of the dart `from -> other`.
    pub fn right_apex(&self, e: EdgeId, from: VertexId) -> Option<VertexId> {
        let edge = self.edges[e.0];
        let other = if edge.tail == from {
            edge.head
        } else {
            edge.tail
        };
        self.left_apex(e, other)
    }

    /// Vertex names in the clockwise rotation of each vertex.
    pub fn rotation_names(&self) -> Vec<Vec<VertexId>> {
        self.rotation
            .iter()
            .map(|r| r.iter().map(|i| i.neighbor).collect())
            .collect()
    }

    /// Vertices in topological order (Kahn, smallest index first).
    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    pub fn edge_label(&self, e: DirectedEdge) -> String {
        format!("{}->{}", self.name(e.tail), self.name(e.head))
    }
}

/// Kahn's algorithm; `None` when the digraph has a cycle.
pub fn topological_order(n: usize, edges: &[DirectedEdge]) -> Option<Vec<VertexId>> {
    // Out-lists in compressed form: targets of v are out[start[v]..start[v + 1]].
    let mut start = vec![0usize; n + 1];
    let mut indeg = vec![0usize; n];
    for e in edges {
        start[e.tail.0 + 1] += 1;
        indeg[e.head.0] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    let mut out = vec![0usize; edges.len()];
    for e in edges {
        out[fill[e.tail.0]] = e.head.0;
        fill[e.tail.0] += 1;
    }
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_front() {
        order.push(VertexId(v));
        for &w in &out[start[v]..start[v + 1]] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Where a vertex sits on the outer boundary of an OT-st-digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexSide {
    Source,
    Sink,
    /// 1-based position on the left chain.
    Left(usize),
    /// 1-based position on the right chain.
    Right(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sidedness {
    OneSidedLeft,
    OneSidedRight,
    TwoSided,
}

/// Extreme neighbours of a vertex on the opposite chain, as chain positions
/// where 0 is `s` and `len + 1` is `t`.
#[derive(Clone, Copy, Debug, Default)]
struct Reach {
    lowest_out_opposite: Option<usize>,
    highest_in_opposite: Option<usize>,
}

/// Validated outerplanar triangulated st-digraph with its boundary chains.
#[derive(Clone, Debug)]
pub struct OTStDigraph {
    base: EmbeddedDigraph,
    left: Vec<VertexId>,
    right: Vec<VertexId>,
    side: Vec<VertexSide>,
    cycle_pos: Vec<usize>,
    reach: Vec<Reach>,
}

impl OTStDigraph {
    /// Derives the boundary chains by walking the outer face and checks
    /// outerplanarity and interior triangulation.
    pub fn classify(g: EmbeddedDigraph) -> Result<Self, GraphError> {
        let n = g.n();
        if n < 3 {
            return Err(GraphError::TooSmall(n));
        }
        for (i, f) in g.faces().iter().enumerate() {
            if i != g.outer_face() && f.len() != 3 {
                let walk: Vec<&str> = f.vertices().map(|v| g.name(v)).collect();
                return Err(GraphError::NonTriangularFace(walk.join(",")));
            }
        }
        let outer = &g.faces()[g.outer_face()];
        let mut on_outer = vec![false; n];
        for v in outer.vertices() {
            if on_outer[v.0] {
                return Err(GraphError::NotOuterplanar(format!(
                    "outer face visits {} twice",
                    g.name(v)
                )));
            }
            on_outer[v.0] = true;
        }
        if let Some(v) = (0..n).find(|&v| !on_outer[v]) {
            return Err(GraphError::NotOuterplanar(format!(
                "interior vertex {}",
                g.names()[v]
            )));
        }

        // Rotate the walk so it starts at s.
        let walk: Vec<VertexId> = outer.vertices().collect();
        let start = walk
            .iter()
            .position(|&v| v == g.source())
            .expect("s on outer face");
        let walk: Vec<VertexId> = walk[start..]
            .iter()
            .chain(&walk[..start])
            .copied()
            .collect();
        let tpos = walk
            .iter()
            .position(|&v| v == g.sink())
            .expect("t on outer face");
        let left: Vec<VertexId> = walk[1..tpos].to_vec();
        let right: Vec<VertexId> = walk[tpos + 1..].iter().rev().copied().collect();

        let mut side = vec![VertexSide::Source; n];
        side[g.sink().0] = VertexSide::Sink;
        for (i, &v) in left.iter().enumerate() {
            side[v.0] = VertexSide::Left(i + 1);
        }
        for (j, &v) in right.iter().enumerate() {
            side[v.0] = VertexSide::Right(j + 1);
        }
        let mut cycle_pos = vec![0; n];
        for (i, &v) in walk.iter().enumerate() {
            cycle_pos[v.0] = i;
        }

        let ot = OTStDigraph {
            base: g,
            left,
            right,
            side,
            cycle_pos,
            reach: Vec::new(),
        };
        for chain in [ot.left_extended(), ot.right_extended()] {
            for w in chain.windows(2) {
                if !ot.base.has_edge(w[0], w[1]) {
                    return Err(GraphError::ChainNotDirected(
                        ot.base.name(w[0]).to_string(),
                        ot.base.name(w[1]).to_string(),
                    ));
                }
            }
        }
        let reach = ot.compute_reach();
        Ok(OTStDigraph { reach, ..ot })
    }

    fn compute_reach(&self) -> Vec<Reach> {
        let g = &self.base;
        let mut reach = vec![Reach::default(); g.n()];
        for v in g.vertices() {
            let mine = self.side[v.0];
            let mut r = Reach::default();
            for inc in g.rotation(v) {
                let w = inc.neighbor;
                let pos = match (mine, self.side[w.0]) {
                    (VertexSide::Left(_), VertexSide::Right(j)) => j,
                    (VertexSide::Right(_), VertexSide::Left(i)) => i,
                    (VertexSide::Left(_), VertexSide::Sink) => self.right.len() + 1,
                    (VertexSide::Right(_), VertexSide::Sink) => self.left.len() + 1,
                    (VertexSide::Left(_) | VertexSide::Right(_), VertexSide::Source) => 0,
                    _ => continue,
                };
                if inc.outgoing {
                    r.lowest_out_opposite = Some(r.lowest_out_opposite.map_or(pos, |p| p.min(pos)));
                } else {
                    r.highest_in_opposite = Some(r.highest_in_opposite.map_or(pos, |p| p.max(pos)));
                }
            }
            reach[v.0] = r;
        }
        reach
    }

    pub fn graph(&self) -> &EmbeddedDigraph {
        &self.base
    }

    pub fn into_graph(self) -> EmbeddedDigraph {
        self.base
    }

    pub fn left(&self) -> &[VertexId] {
        &self.left
    }

    pub fn right(&self) -> &[VertexId] {
        &self.right
    }

    pub fn source(&self) -> VertexId {
        self.base.source()
    }

    pub fn sink(&self) -> VertexId {
        self.base.sink()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn vertex_side(&self, v: VertexId) -> VertexSide {
        self.side[v.0]
    }

    /// `s, V^l..., t`.
    pub fn left_extended(&self) -> Vec<VertexId> {
        let mut c = Vec::with_capacity(self.left.len() + 2);
        c.push(self.source());
        c.extend_from_slice(&self.left);
        c.push(self.sink());
        c
    }

    /// `s, V^r..., t`.
    pub fn right_extended(&self) -> Vec<VertexId> {
        let mut c = Vec::with_capacity(self.right.len() + 2);
        c.push(self.source());
        c.extend_from_slice(&self.right);
        c.push(self.sink());
        c
    }

    /// Vertex at `pos` of the extended chain on `side` (0 = s, len+1 = t).
    pub fn chain_vertex(&self, side: Side, pos: usize) -> VertexId {
        let chain = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        if pos == 0 {
            self.source()
        } else if pos == chain.len() + 1 {
            self.sink()
        } else {
            chain[pos - 1]
        }
    }

    /// Position along the outer cycle `s, V^l, t, V^r reversed`.
    pub fn cycle_position(&self, v: VertexId) -> usize {
        self.cycle_pos[v.0]
    }

    /// Lowest out-neighbour of `v` on the chain opposite to `v`, counting
    /// `t` as the top of that chain. `None` for `s`, `t`, or when absent.
    pub fn lowest_out_opposite(&self, v: VertexId) -> Option<usize> {
        self.reach[v.0].lowest_out_opposite
    }

    /// Highest in-neighbour of `v` on the opposite chain, counting `s` as its
    /// bottom.
    pub fn highest_in_opposite(&self, v: VertexId) -> Option<usize> {
        self.reach[v.0].highest_in_opposite
    }

    /// Chain side of a vertex; `None` for `s` and `t`.
    pub fn chain_side(&self, v: VertexId) -> Option<Side> {
        match self.side[v.0] {
            VertexSide::Left(_) => Some(Side::Left),
            VertexSide::Right(_) => Some(Side::Right),
            _ => None,
        }
    }

    pub fn is_boundary_edge(&self, e: DirectedEdge) -> bool {
        let n = self.n();
        let (a, b) = (self.cycle_pos[e.tail.0], self.cycle_pos[e.head.0]);
        (a + 1) % n == b || (b + 1) % n == a
    }

    pub fn edge_sidedness(&self, e: DirectedEdge) -> Result<Sidedness, GraphError> {
        if !self.base.has_edge(e.tail, e.head) {
            return Err(GraphError::UnknownEdge(
                self.base.name(e.tail).to_string(),
                self.base.name(e.head).to_string(),
            ));
        }
        let one_sided = |s: Side| match s {
            Side::Left => Sidedness::OneSidedLeft,
            Side::Right => Sidedness::OneSidedRight,
        };
        Ok(match (self.chain_side(e.tail), self.chain_side(e.head)) {
            (None, None) => Sidedness::OneSidedLeft,
            (Some(a), None) | (None, Some(a)) => one_sided(a),
            (Some(a), Some(b)) if a == b => one_sided(a),
            _ => Sidedness::TwoSided,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{ot_from_names, rhombus, with_interior_vertices};

    fn build(
        names: &[&str],
        edges: &[(usize, usize)],
        rotation: &[&[usize]],
    ) -> Result<EmbeddedDigraph, GraphError> {
        EmbeddedDigraph::new(
            names.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|&(a, b)| DirectedEdge::new(VertexId(a), VertexId(b)))
                .collect(),
            rotation
                .iter()
                .map(|r| r.iter().map(|&v| VertexId(v)).collect())
                .collect(),
            VertexId(0),
            VertexId(names.len().saturating_sub(1)),
        )
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(build(&[], &[], &[]).unwrap_err(), GraphError::Empty);
        assert!(matches!(
            build(&["s", "t"], &[(0, 0)], &[&[0], &[]]),
            Err(GraphError::SelfLoop(_))
        ));
        assert!(matches!(
            build(&["s", "t"], &[(0, 1), (1, 0)], &[&[1, 1], &[0, 0]]),
            Err(GraphError::ParallelEdge(..))
        ));
        assert!(matches!(
            build(&["s", "t"], &[(0, 1)], &[&[1]]),
            Err(GraphError::RotationMismatch(_))
        ));
        assert!(matches!(
            build(&["s", "t"], &[(0, 1)], &[&[1], &[]]),
            Err(GraphError::RotationMismatch(_))
        ));
    }

    #[test]
    fn cycle_detection() {
        let e = |a, b| DirectedEdge::new(VertexId(a), VertexId(b));
        assert!(topological_order(3, &[e(0, 1), e(1, 2), e(2, 0)]).is_none());
        let order = topological_order(3, &[e(0, 2), e(2, 1)]).unwrap();
        assert_eq!(order, vec![VertexId(0), VertexId(2), VertexId(1)]);
    }

    #[test]
    fn rhombus_structure() {
        let g = rhombus();
        let gr = g.graph();
        let v = |n| gr.vertex_by_name(n).unwrap();
        assert_eq!((gr.n(), gr.m(), gr.faces().len()), (4, 5, 3));
        assert_eq!(gr.faces()[gr.outer_face()].len(), 4);
        assert_eq!(g.left(), &[v("a")]);
        assert_eq!(g.right(), &[v("b")]);
        assert_eq!(g.cycle_position(v("a")), 1);
        assert_eq!(g.cycle_position(v("b")), 3);
        let median = gr.find_edge(v("s"), v("t")).unwrap();
        assert_eq!(gr.left_apex(median, v("s")), Some(v("a")));
        assert_eq!(gr.right_apex(median, v("s")), Some(v("b")));
        let ab = gr.find_edge(v("s"), v("a")).unwrap();
        assert!(gr.left_apex(ab, v("s")).is_none() || gr.right_apex(ab, v("s")).is_none());
        assert_eq!(gr.topological_order()[0], v("s"));
        assert_eq!(gr.edge_label(DirectedEdge::new(v("s"), v("t"))), "s->t");
    }

    #[test]
    fn faces_follow_rotation() {
        let g = rhombus();
        let gr = g.graph();
        for (v, list) in gr.vertices().map(|v| (v, gr.rotation(v))) {
            for slot in 0..list.len() {
                let f = gr.face_of((v, slot));
                let (w, back) = gr.next_in_face((v, slot));
                assert_eq!(gr.face_of((w, back)), f);
            }
        }
    }

    #[test]
    fn classify_rejections() {
        let square = ot_from_names(
            &["a"],
            &["b"],
            &[("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")],
        );
        assert!(matches!(square, Err(GraphError::NonTriangularFace(_))));
        let inner = with_interior_vertices(rhombus().graph(), 1, 3);
        assert!(matches!(
            OTStDigraph::classify(inner),
            Err(GraphError::NotOuterplanar(_))
        ));
        let backwards = ot_from_names(
            &["a"],
            &["b"],
            &[("s", "a"), ("b", "s"), ("a", "t"), ("b", "t"), ("s", "t")],
        );
        assert!(backwards.is_err());
    }
}
