//! Seeded instance generators and small named fixtures.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{DirectedEdge, EmbeddedDigraph, OTStDigraph, VertexId};

/// Probability at bias 0 that an interior chain vertex is hidden in a pocket
/// behind a one-sided chord; it falls linearly to `POCKET_RATE / 4` at bias 1.
const POCKET_RATE: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenProfile {
    pub n_left: usize,
    pub n_right: usize,
    /// 0 favours hamiltonian strips, 1 favours rhombus-rich strips.
    pub polygon_bias: f64,
    pub seed: u64,
}

impl GenProfile {
    pub fn new(n_left: usize, n_right: usize, polygon_bias: f64, seed: u64) -> Self {
        GenProfile {
            n_left,
            n_right,
            polygon_bias,
            seed,
        }
    }

    pub fn n(&self) -> usize {
        self.n_left + self.n_right + 2
    }
}

/// Builds an OT-st-digraph from its two boundary chains and edge list. The
/// rotation system is derived by placing the outer cycle
/// `s, left..., t, right reversed...` clockwise on a circle.
pub fn ot_from_chains(
    names: Vec<String>,
    source: VertexId,
    sink: VertexId,
    left: &[VertexId],
    right: &[VertexId],
    edges: Vec<DirectedEdge>,
) -> Result<OTStDigraph, GraphError> {
    let n = names.len();
    let mut cycle = Vec::with_capacity(n);
    cycle.push(source);
    cycle.extend_from_slice(left);
    cycle.push(sink);
    cycle.extend(right.iter().rev());
    if cycle.len() != n {
        return Err(GraphError::NotOuterplanar(
            "chains do not cover every vertex".into(),
        ));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, v) in cycle.iter().enumerate() {
        if pos[v.0] != usize::MAX {
            return Err(GraphError::DuplicateVertex(names[v.0].clone()));
        }
        pos[v.0] = i;
    }
    let mut rotation: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in &edges {
        rotation[e.tail.0].push(e.head);
        rotation[e.head.0].push(e.tail);
    }
    for (v, list) in rotation.iter_mut().enumerate() {
        let p = pos[v];
        list.sort_by_key(|w| (pos[w.0] + n - p) % n);
    }
    OTStDigraph::classify(EmbeddedDigraph::new(names, edges, rotation, source, sink)?)
}

/// Convenience for fixtures: vertices, chains and edges given by name.
pub fn ot_from_names(
    left: &[&str],
    right: &[&str],
    edges: &[(&str, &str)],
) -> Result<OTStDigraph, GraphError> {
    let mut names = vec!["s".to_string()];
    names.extend(left.iter().map(|s| s.to_string()));
    names.extend(right.iter().map(|s| s.to_string()));
    names.push("t".to_string());
    let id = |name: &str| -> Result<VertexId, GraphError> {
        names
            .iter()
            .position(|n| n == name)
            .map(VertexId)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    };
    let l = left.iter().map(|n| id(n)).collect::<Result<Vec<_>, _>>()?;
    let r = right.iter().map(|n| id(n)).collect::<Result<Vec<_>, _>>()?;
    let es = edges
        .iter()
        .map(|(a, b)| Ok(DirectedEdge::new(id(a)?, id(b)?)))
        .collect::<Result<Vec<_>, GraphError>>()?;
    let (s, t) = (id("s")?, id("t")?);
    ot_from_chains(names, s, t, &l, &r, es)
}

pub fn triangle() -> OTStDigraph {
    ot_from_names(&["v"], &[], &[("s", "v"), ("v", "t"), ("s", "t")]).expect("valid fixture")
}

/// Four vertices with the median `(s,t)` between the apexes `a` and `b`.
pub fn rhombus() -> OTStDigraph {
    ot_from_names(
        &["a"],
        &["b"],
        &[("s", "a"), ("s", "b"), ("a", "t"), ("b", "t"), ("s", "t")],
    )
    .expect("valid fixture")
}

/// The st-polygon on `s, u1..u8, v1..v4, t` whose two single-edge completions
/// `(u8,v1)` and `(v4,u1)` cost 5 crossings each, while the two-edge set
/// `{(u3,v1), (v4,u4)}` costs 4 with the median crossed twice.
pub fn counterexample_polygon() -> OTStDigraph {
    let left = ["u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8"];
    let right = ["v1", "v2", "v3", "v4"];
    let mut edges = vec![
        ("s", "u1"),
        ("u8", "t"),
        ("s", "v1"),
        ("v4", "t"),
        ("s", "t"),
    ];
    edges.extend(left.windows(2).map(|w| (w[0], w[1])));
    edges.extend(right.windows(2).map(|w| (w[0], w[1])));
    edges.extend([("s", "u2"), ("s", "u3"), ("s", "u4")]);
    edges.extend([("u4", "t"), ("u5", "t"), ("u6", "t"), ("u7", "t")]);
    edges.extend([("v1", "t"), ("v1", "v3"), ("v1", "v4")]);
    ot_from_names(&left, &right, &edges).expect("valid fixture")
}

/// Random OT-st-digraph.
///
/// Chain vertices are interleaved by a random merge order that orients every
/// edge (so the result is acyclic with unique source and sink). Non-pocket
/// vertices are joined by a lattice-path triangulation of the two-chain
/// strip; at each step the path follows the merge order with probability
/// `1 - 0.5 * polygon_bias`, and deviations are what create rhombi. Higher
/// bias also hides fewer vertices in pockets.
pub fn random_ot(profile: &GenProfile) -> OTStDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let (k, m) = (profile.n_left, profile.n_right);
    let n = k + m + 2;
    let s = VertexId(0);
    let t = VertexId(n - 1);
    let left: Vec<VertexId> = (1..=k).map(VertexId).collect();
    let right: Vec<VertexId> = (k + 1..=k + m).map(VertexId).collect();
    let mut names = Vec::with_capacity(n);
    names.push("s".to_string());
    names.extend((1..=k).map(|i| format!("l{i}")));
    names.extend((1..=m).map(|j| format!("r{j}")));
    names.push("t".to_string());

    // Random merge of the two chains; rank orients the edges.
    let mut rank = vec![0usize; n];
    let (mut i, mut j) = (0, 0);
    for r in 1..=k + m {
        let take_left = j == m || (i < k && rng.gen_bool(0.5));
        if take_left {
            rank[left[i].0] = r;
            i += 1;
        } else {
            rank[right[j].0] = r;
            j += 1;
        }
    }
    rank[t.0] = n;

    let mut pairs: HashSet<(usize, usize)> = HashSet::with_capacity(2 * n);
    let mut add = |a: VertexId, b: VertexId, pairs: &mut HashSet<(usize, usize)>| {
        if a != b {
            pairs.insert((a.0.min(b.0), a.0.max(b.0)));
        }
    };

    let pocket = POCKET_RATE * (1.0 - 0.75 * profile.polygon_bias.clamp(0.0, 1.0));
    let main_left = pocketed_chain(&mut rng, pocket, s, t, &left, &mut pairs, &mut add);
    let main_right = pocketed_chain(&mut rng, pocket, s, t, &right, &mut pairs, &mut add);

    let follow = (1.0 - 0.5 * profile.polygon_bias).clamp(0.0, 1.0);
    let (mut a, mut b) = (0, 0);
    let (ka, mb) = (main_left.len() - 1, main_right.len() - 1);
    while a < ka || b < mb {
        let step_left = if a == ka {
            false
        } else if b == mb {
            true
        } else {
            let left_first = rank[main_left[a + 1].0] < rank[main_right[b + 1].0];
            if rng.gen_bool(follow) {
                left_first
            } else {
                !left_first
            }
        };
        if step_left {
            a += 1;
        } else {
            b += 1;
        }
        // The new rung plus the two boundary edges close a triangle.
        add(main_left[a], main_right[b], &mut pairs);
    }

    let mut edges: Vec<DirectedEdge> = pairs
        .into_iter()
        .map(|(x, y)| {
            let (x, y) = (VertexId(x), VertexId(y));
            if rank[x.0] < rank[y.0] {
                DirectedEdge::new(x, y)
            } else {
                DirectedEdge::new(y, x)
            }
        })
        .collect();
    edges.sort();
    ot_from_chains(names, s, t, &left, &right, edges).expect("generator produces valid OT graphs")
}

/// Adds the boundary path of one chain, hides random runs of vertices in
/// randomly triangulated pockets, and returns the remaining main chain
/// (including `s` and `t`).
fn pocketed_chain<R: Rng>(
    rng: &mut R,
    pocket_rate: f64,
    s: VertexId,
    t: VertexId,
    chain: &[VertexId],
    pairs: &mut HashSet<(usize, usize)>,
    add: &mut impl FnMut(VertexId, VertexId, &mut HashSet<(usize, usize)>),
) -> Vec<VertexId> {
    let full: Vec<VertexId> = std::iter::once(s)
        .chain(chain.iter().copied())
        .chain(std::iter::once(t))
        .collect();
    for w in full.windows(2) {
        add(w[0], w[1], pairs);
    }
    let mut main = vec![s];
    let mut run_start = 0;
    for idx in 1..full.len() {
        let is_last = idx == full.len() - 1;
        if !is_last && rng.gen_bool(pocket_rate) {
            continue;
        }
        if idx - run_start > 1 {
            triangulate_pocket(rng, &full[run_start..=idx], pairs, add);
        }
        main.push(full[idx]);
        run_start = idx;
    }
    main
}

/// Random triangulation of the convex polygon `poly` (closed by the chord
/// between its endpoints).
fn triangulate_pocket<R: Rng>(
    rng: &mut R,
    poly: &[VertexId],
    pairs: &mut HashSet<(usize, usize)>,
    add: &mut impl FnMut(VertexId, VertexId, &mut HashSet<(usize, usize)>),
) {
    let mut stack = vec![(0usize, poly.len() - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        add(poly[lo], poly[hi], pairs);
        let apex = rng.gen_range(lo + 1..hi);
        add(poly[lo], poly[apex], pairs);
        add(poly[apex], poly[hi], pairs);
        stack.push((lo, apex));
        stack.push((apex, hi));
    }
}

/// Inserts `count` vertices into random interior triangles, connecting each
/// to the three corners. The result is a triangulated planar st-digraph that
/// is no longer outerplanar.
pub fn with_interior_vertices(g: &EmbeddedDigraph, count: usize, seed: u64) -> EmbeddedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = g.topological_order();
    let mut height = vec![0.0f64; g.n()];
    for (i, v) in order.iter().enumerate() {
        height[v.0] = i as f64;
    }
    let mut g = g.clone();
    for step in 0..count {
        let interior: Vec<usize> = (0..g.faces().len())
            .filter(|&f| f != g.outer_face())
            .collect();
        let f = interior[rng.gen_range(0..interior.len())];
        let darts = g.faces()[f].darts.clone();
        let corners: Vec<VertexId> = darts.iter().map(|d| d.0).collect();
        let lo = corners
            .iter()
            .map(|c| height[c.0])
            .fold(f64::INFINITY, f64::min);
        let hi = corners
            .iter()
            .map(|c| height[c.0])
            .fold(f64::NEG_INFINITY, f64::max);
        let h = lo + (hi - lo) * rng.gen_range(0.05..0.95);

        let x = VertexId(g.n());
        let mut names = g.names().to_vec();
        names.push(format!("x{step}"));
        height.push(h);
        let mut rotation = g.rotation_names();
        // Walking a -> b -> c with the face on the left: at b the face spans
        // from a clockwise to c, so x goes right after a.
        for i in 0..3 {
            let a = corners[i];
            let b = corners[(i + 1) % 3];
            let rot = &mut rotation[b.0];
            let at = rot.iter().position(|&w| w == a).expect("face corner");
            rot.insert(at + 1, x);
        }
        rotation.push(vec![corners[0], corners[2], corners[1]]);
        let mut edges = g.edges().to_vec();
        for &c in &corners {
            edges.push(if height[c.0] < h {
                DirectedEdge::new(c, x)
            } else {
                DirectedEdge::new(x, c)
            });
        }
        g = EmbeddedDigraph::new(names, edges, rotation, g.source(), g.sink())
            .expect("face insertion keeps an st-digraph");
    }
    g
}

/// `k` st-polygons stacked along the strip, each sharing its upper limiting
/// edge with the lower limiting edge of the next: left chain `l1..l(k+1)`,
/// right chain `r1..r(2k+1)`, and `li` adjacent to `r(2i-1)`, `r(2i)`,
/// `r(2i+1)` for `i <= k`. The medians are `(li, r(2i+1))`; `n = 3k + 4`.
pub fn stacked_polygons(k: usize) -> OTStDigraph {
    let k = k.max(1);
    let r_len = 2 * k + 1;
    let mut names = Vec::with_capacity(3 * k + 4);
    names.push("s".to_string());
    names.extend((1..=k + 1).map(|i| format!("l{i}")));
    names.extend((1..=r_len).map(|j| format!("r{j}")));
    names.push("t".to_string());
    let s = VertexId(0);
    let l = |i: usize| VertexId(i);
    let r = |j: usize| VertexId(k + 1 + j);
    let t = VertexId(k + r_len + 2);
    let left: Vec<VertexId> = (1..=k + 1).map(l).collect();
    let right: Vec<VertexId> = (1..=r_len).map(r).collect();
    let mut edges = Vec::with_capacity(6 * k + 4);
    edges.push(DirectedEdge::new(s, l(1)));
    edges.push(DirectedEdge::new(s, r(1)));
    edges.extend(left.windows(2).map(|w| DirectedEdge::new(w[0], w[1])));
    edges.extend(right.windows(2).map(|w| DirectedEdge::new(w[0], w[1])));
    edges.push(DirectedEdge::new(l(k + 1), t));
    edges.push(DirectedEdge::new(r(r_len), t));
    edges.push(DirectedEdge::new(l(k + 1), r(r_len)));
    for i in 1..=k {
        for j in 2 * i - 1..=2 * i + 1 {
            edges.push(DirectedEdge::new(l(i), r(j)));
        }
    }
    ot_from_chains(names, s, t, &left, &right, edges).expect("stacked polygons are OT")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_graph;
    use crate::hamiltonicity::find_rhombi;

    #[test]
    fn profile_sizes() {
        for seed in 0..20 {
            let p = GenProfile::new(3 + seed as usize % 5, 4, 0.3, seed);
            let g = random_ot(&p);
            assert_eq!(g.n(), p.n());
            assert_eq!(g.left().len() + g.right().len(), p.n() - 2);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let p = GenProfile::new(7, 6, 0.5, 42);
        assert_eq!(
            serialize_graph(random_ot(&p).graph()),
            serialize_graph(random_ot(&p).graph())
        );
        let other = GenProfile::new(7, 6, 0.5, 43);
        let differs = (43..53).any(|s| {
            let q = GenProfile { seed: s, ..other };
            serialize_graph(random_ot(&q).graph()) != serialize_graph(random_ot(&p).graph())
        });
        assert!(differs);
    }

    #[test]
    fn bias_controls_polygons() {
        let count = |bias| -> usize {
            (0..30)
                .map(|s| {
                    find_rhombi(random_ot(&GenProfile::new(10, 10, bias, s)).graph())
                        .unwrap()
                        .len()
                })
                .sum()
        };
        assert!(count(1.0) > count(0.0));
    }

    #[test]
    fn interior_vertices_stay_st() {
        let g = with_interior_vertices(rhombus().graph(), 3, 9);
        assert_eq!(g.n(), 7);
        assert_eq!(g.faces().iter().filter(|f| f.len() != 3).count(), 1);
    }

    #[test]
    fn stacked_size() {
        assert_eq!(stacked_polygons(10).n(), 34);
    }
}
