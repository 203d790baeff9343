use otst::decomposition::{decompose, is_median, maximal_polygon, DecompositionElement};
use otst::gen::{random_ot, stacked_polygons, GenProfile};
use otst::graph::OTStDigraph;
use otst::hamiltonicity::find_rhombi;
use otst::oracle::{is_median_by_definition, polygon_defects, polygon_vertices_by_definition};

fn corpus() -> impl Iterator<Item = OTStDigraph> {
    (0..300u64).map(|seed| {
        let chain = 2 + seed as usize % 30;
        let left = 1 + (seed as usize / 30) % (chain - 1);
        random_ot(&GenProfile::new(
            left,
            chain - left,
            (seed % 4) as f64 / 3.0,
            seed,
        ))
    })
}

#[test]
fn medians_agree_with_definition() {
    for g in corpus() {
        for &e in g.graph().edges() {
            assert_eq!(is_median(&g, e).unwrap(), is_median_by_definition(&g, e));
        }
    }
}

#[test]
fn one_polygon_per_median() {
    for g in corpus() {
        let d = decompose(&g);
        let mut from_d: Vec<_> = d.polygons().map(|p| p.median).collect();
        let mut from_rhombi: Vec<_> = find_rhombi(g.graph())
            .unwrap()
            .iter()
            .map(|r| r.median)
            .collect();
        from_d.sort();
        from_rhombi.sort();
        assert_eq!(from_d, from_rhombi);
        for p in d.polygons() {
            assert_eq!(&maximal_polygon(&g, p.median).unwrap(), p);
            assert!(polygon_defects(&g, p).is_empty());
        }
    }
}

#[test]
fn free_vertices_are_outside_every_interval() {
    for g in corpus() {
        let d = decompose(&g);
        let covered: Vec<_> = d
            .polygons()
            .flat_map(|p| polygon_vertices_by_definition(&g, p.median))
            .collect();
        for e in &d.elements {
            if let DecompositionElement::FreeVertex(v) = e {
                assert!(!covered.contains(v));
            }
        }
    }
}

#[test]
fn order_follows_reachability() {
    for g in corpus().chain([stacked_polygons(7)]) {
        let d = decompose(&g);
        let order = g.graph().topological_order();
        let mut rank = vec![0; g.n()];
        for (i, v) in order.iter().enumerate() {
            rank[v.0] = i;
        }
        for w in d.elements.windows(2) {
            assert!(rank[w[0].representative().0] < rank[w[1].representative().0]);
        }
    }
}
