//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::time::{Duration, Instant};

use otst::book::{from_book_embedding, to_book_embedding, validate_embedding};
use otst::decomposition::decompose;
use otst::gen::{
    counterexample_polygon, random_ot, rhombus, stacked_polygons, with_interior_vertices,
    GenProfile,
};
use otst::graph::{DirectedEdge, OTStDigraph};
use otst::hamiltonicity::{find_rhombi, hamiltonian_path};
use otst::oracle::{
    exhaustive_hamiltonian, exhaustive_min_crossings, polygon_defects, rhombi_inside,
};
use otst::solver::{polygon_costs, solve, solve_decomposed};
use otst::verify::verify_solution;

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: usize, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!(
            "{} {id}. {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn best_of<T>(runs: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..runs {
        let t = Instant::now();
        let v = f();
        best = best.min(t.elapsed());
        out = Some(v);
    }
    (out.unwrap(), best)
}

fn rhombus_instance() -> (bool, String) {
    let g = rhombus();
    let rhombi = find_rhombi(g.graph()).unwrap();
    let (r, took) = best_of(20, || solve(&g).unwrap());
    let median = DirectedEdge::new(g.source(), g.sink());
    let ok = rhombi.len() == 1
        && hamiltonian_path(g.graph()).is_none()
        && r.total_crossings == 1
        && r.completion.len() == 1
        && r.completion[0].crossings == [median]
        && took < Duration::from_millis(1);
    (
        ok,
        format!(
            "rhombi={} crossings={} solve={took:?}",
            rhombi.len(),
            r.total_crossings
        ),
    )
}

fn counterexample() -> (bool, String) {
    let g = counterexample_polygon();
    let d = decompose(&g);
    let c = polygon_costs(d.polygons().next().unwrap());
    let r = solve(&g).unwrap();
    let mut crossed: Vec<_> = r
        .completion
        .iter()
        .flat_map(|c| c.crossings.iter().copied())
        .collect();
    let listed = crossed.len();
    crossed.sort();
    crossed.dedup();
    let ok = c.left == 5
        && c.right == 5
        && r.total_crossings == 5
        && crossed.len() == listed
        && exhaustive_min_crossings(&g).unwrap() == 5
        && verify_solution(&g, &r).is_empty();
    (
        ok,
        format!(
            "cL={} cR={} solve={} distinct crossed edges={}",
            c.left,
            c.right,
            r.total_crossings,
            crossed.len()
        ),
    )
}

/// Seeded OT instances with 4 <= n <= 40 and at most 12 polygons.
fn oracle_suite() -> Vec<OTStDigraph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 600 {
        // Every third instance is large and rhombus-rich to reach high lambda.
        let (chain, left, bias) = if seed.is_multiple_of(3) {
            let chain = 34 + seed as usize % 5;
            (chain, chain / 2 - 1 + seed as usize % 3, 1.0)
        } else {
            let chain = 2 + (seed as usize * 7) % 37;
            (
                chain,
                1 + (seed as usize / 3) % (chain - 1),
                (seed % 5) as f64 / 4.0,
            )
        };
        let g = random_ot(&GenProfile::new(
            left,
            chain - left,
            bias,
            0xACCE_0000 + seed,
        ));
        seed += 1;
        if decompose(&g).polygon_count() <= 12 {
            out.push(g);
        }
    }
    out
}

fn oracle_equivalence(suite: &[OTStDigraph]) -> (bool, String) {
    let start = Instant::now();
    let mut bad = 0;
    let mut max_lambda = 0;
    let mut high = 0;
    for g in suite {
        let d = decompose(g);
        max_lambda = max_lambda.max(d.polygon_count());
        high += usize::from(d.polygon_count() >= 10);
        let dp = solve_decomposed(g, &d).map(|r| r.total_crossings);
        if dp.ok() != exhaustive_min_crossings(g).ok() {
            bad += 1;
        }
    }
    let took = start.elapsed();
    let max_n = suite.iter().map(|g| g.n()).max().unwrap_or(0);
    (
        bad == 0 && suite.len() >= 500 && took < Duration::from_secs(60),
        format!("{} instances, n<={max_n}, lambda<={max_lambda} ({high} with lambda>=10), {bad} disagreements, {took:.2?}", suite.len()),
    )
}

fn hamiltonicity_criterion() -> (bool, String) {
    let (mut total, mut bad, mut hamiltonian, mut with_interior) = (0, 0, 0, 0);
    for seed in 0..700u64 {
        let chain = 2 + seed as usize % 9;
        let left = 1 + (seed as usize / 9) % (chain - 1);
        let base = random_ot(&GenProfile::new(
            left,
            chain - left,
            (seed % 3) as f64 / 2.0,
            seed,
        ));
        let g = if seed % 2 == 0 || base.n() > 10 {
            base.into_graph()
        } else {
            with_interior_vertices(base.graph(), 1 + seed as usize % 2, seed)
        };
        if g.n() > 12 {
            continue;
        }
        total += 1;
        with_interior += usize::from(g.n() > base_n(&g));
        let by_rhombi = find_rhombi(&g).unwrap().is_empty();
        let path = hamiltonian_path(&g);
        let path_ok = path
            .as_ref()
            .is_none_or(|p| p.len() == g.n() && p.windows(2).all(|w| g.has_edge(w[0], w[1])));
        let by_search = exhaustive_hamiltonian(&g).unwrap();
        hamiltonian += usize::from(by_search);
        if !(by_rhombi == path.is_some() && by_rhombi == by_search && path_ok) {
            bad += 1;
        }
    }
    (
        total >= 500 && bad == 0,
        format!("{total} instances ({with_interior} with interior vertices, {hamiltonian} hamiltonian), {bad} disagreements"),
    )
}

/// Number of vertices on the outer face; fewer than `n` means interior
/// vertices were added.
fn base_n(g: &otst::graph::EmbeddedDigraph) -> usize {
    g.faces()[g.outer_face()].len()
}

fn larger_suite(oracle: &[OTStDigraph]) -> Vec<OTStDigraph> {
    let mut out = oracle.to_vec();
    for seed in 0..200u64 {
        let size = 40 + (seed as usize * 13) % 300;
        out.push(random_ot(&GenProfile::new(
            size / 2,
            size - size / 2,
            (seed % 5) as f64 / 4.0,
            seed,
        )));
    }
    out.extend([rhombus(), counterexample_polygon(), stacked_polygons(50)]);
    out
}

fn solution_validity(suite: &[OTStDigraph]) -> (bool, String) {
    let mut violations = 0;
    for g in suite {
        match solve(g) {
            Ok(r) => violations += verify_solution(g, &r).len(),
            Err(_) => violations += 1,
        }
    }
    (
        violations == 0,
        format!("{} instances, {violations} violations", suite.len()),
    )
}

fn book_equivalence(suite: &[OTStDigraph]) -> (bool, String) {
    let mut bad = 0;
    for g in suite {
        let r = solve(g).unwrap();
        let ok = to_book_embedding(g, &r).is_ok_and(|b| {
            b.crossings.len() == r.total_crossings
                && validate_embedding(g.graph(), &b).is_empty()
                && from_book_embedding(g, &b).is_ok_and(|back| back == r)
        });
        bad += usize::from(!ok);
    }
    (
        bad == 0,
        format!("{} instances, {bad} mismatches", suite.len()),
    )
}

fn polygon_structure(suite: &[OTStDigraph]) -> (bool, String) {
    let (mut polygons, mut bad) = (0, 0);
    for g in suite {
        let d = decompose(g);
        let ps: Vec<_> = d.polygons().collect();
        polygons += ps.len();
        for p in &ps {
            if rhombi_inside(g, p) != 1 || !polygon_defects(g, p).is_empty() {
                bad += 1;
            }
        }
        let sets: Vec<Vec<bool>> = ps
            .iter()
            .map(|p| {
                let mut m = vec![false; g.n()];
                p.vertices().for_each(|v| m[v.0] = true);
                m
            })
            .collect();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if a.iter().zip(b).filter(|(x, y)| **x && **y).count() > 2 {
                    bad += 1;
                }
            }
        }
    }
    (
        bad == 0,
        format!(
            "{} instances, {polygons} polygons, {bad} violations",
            suite.len()
        ),
    )
}

fn linear_time() -> (bool, String) {
    let mut times = Vec::new();
    for k in [3_332usize, 33_332, 333_332] {
        let g = stacked_polygons(k);
        let (_, took) = best_of(3, || {
            let d = decompose(&g);
            solve_decomposed(&g, &d).unwrap().total_crossings
        });
        times.push((g.n(), took.as_secs_f64()));
    }
    let ratios: Vec<f64> = times
        .windows(2)
        .map(|w| (w[1].1 / w[0].1) / (w[1].0 as f64 / w[0].0 as f64))
        .collect();
    let largest = times[2].1;
    let ok = largest < 2.0 && ratios.iter().all(|&r| r <= 2.0);
    let shown: Vec<String> = times
        .iter()
        .map(|(n, t)| format!("n={n}: {:.1} ms", t * 1e3))
        .collect();
    (
        ok,
        format!(
            "{}; growth vs linear {:.2}, {:.2}",
            shown.join(", "),
            ratios[0],
            ratios[1]
        ),
    )
}

fn main() {
    let mut report = Report { failures: 0 };
    let (ok, d) = rhombus_instance();
    report.line(1, "rhombus instance", ok, d);
    let (ok, d) = counterexample();
    report.line(2, "five-crossing polygon", ok, d);
    let oracle = oracle_suite();
    let (ok, d) = oracle_equivalence(&oracle);
    report.line(3, "oracle equivalence", ok, d);
    let (ok, d) = hamiltonicity_criterion();
    report.line(4, "hamiltonicity iff no rhombus", ok, d);
    let suite = larger_suite(&oracle);
    let (ok, d) = solution_validity(&suite);
    report.line(5, "solution validity", ok, d);
    let (ok, d) = book_equivalence(&suite);
    report.line(6, "book embedding equivalence", ok, d);
    let (ok, d) = polygon_structure(&suite);
    report.line(7, "st-polygon structure", ok, d);
    let (ok, d) = linear_time();
    report.line(8, "linear-time behaviour", ok, d);
    if report.failures > 0 {
        println!("{} criteria failed", report.failures);
        std::process::exit(1);
    }
}
