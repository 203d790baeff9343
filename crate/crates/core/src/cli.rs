//! Command-line front end. `run` takes the full argument vector and returns
//! the exit code with captured stdout and stderr, so it can be driven from
//! tests as well as from the binary.
//!
//! Exit codes: 0 success, 1 invalid input, 2 internal verification failure.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::book::{render_svg, render_text, to_book_embedding, validate_embedding};
use crate::decomposition::{decompose, Decomposition, DecompositionElement};
use crate::format::{parse_graph, serialize_graph};
use crate::gen::{random_ot, stacked_polygons, GenProfile};
use crate::graph::{EmbeddedDigraph, OTStDigraph, VertexId};
use crate::hamiltonicity::{find_rhombi, hamiltonian_path};
use crate::oracle::exhaustive_min_crossings;
use crate::solver::solve_decomposed;
use crate::verify::verify_solution;

#[derive(Parser, Debug)]
#[command(
    name = "otst",
    about = "Spine crossing minimization for OT-st-digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file and report its structure.
    Validate { file: String },
    /// List rhombi and decide hamiltonicity; without FILE, run a seeded
    /// batch comparing the solver with the exhaustive oracle.
    Check {
        file: Option<String>,
        #[arg(long, default_value_t = 200)]
        batch: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
    },
    /// List the st-polygon decomposition.
    Decompose { file: String },
    /// Compute a crossing-optimal acyclic HP-completion.
    Solve { file: String },
    /// Print the 2-page book embedding of the optimal solution.
    Embed { file: String },
    /// Draw the book embedding as SVG.
    Render {
        file: String,
        #[arg(short, long)]
        output: String,
    },
    /// Generate a random OT-st-digraph.
    Gen {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        bias: f64,
    },
    /// Time decomposition and solving on stacked-polygon chains.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
    },
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output::ok(text)
            } else {
                Output::fail(1, text)
            };
        }
    };
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Check {
            file: Some(file), ..
        } => check_file(&file),
        Command::Check {
            file: None,
            batch,
            seed,
            max_n,
        } => check_batch(batch, seed, max_n),
        Command::Decompose { file } => with_ot(&file, |g| {
            Output::ok(decomposition_listing(g, &decompose(g)))
        }),
        Command::Solve { file } => with_ot(&file, |g| match solve_decomposed(g, &decompose(g)) {
            Ok(r) => Output::ok(r.render(g.graph())),
            Err(e) => Output::fail(2, format!("error: {e}\n")),
        }),
        Command::Embed { file } => with_ot(&file, |g| embed(g, |b| render_text(g.graph(), b))),
        Command::Render { file, output } => with_ot(&file, |g| {
            let out = embed(g, |b| render_svg(g.graph(), b));
            if out.code != 0 {
                return out;
            }
            match std::fs::write(&output, out.stdout) {
                Ok(()) => Output::ok(format!("wrote {output}\n")),
                Err(e) => Output::fail(1, format!("error: cannot write {output}: {e}\n")),
            }
        }),
        Command::Gen {
            left,
            right,
            seed,
            bias,
        } => {
            if left + right == 0 {
                return Output::fail(1, "error: need at least one chain vertex\n".into());
            }
            let g = random_ot(&GenProfile::new(left, right, bias.clamp(0.0, 1.0), seed));
            Output {
                code: 0,
                stdout: serialize_graph(g.graph()),
                stderr: format!("# seed={seed} left={left} right={right} bias={bias}\n"),
            }
        }
        Command::Bench { sizes, repeat } => bench(&sizes, repeat.max(1)),
    }
}

fn read_graph(file: &str) -> Result<EmbeddedDigraph, Output> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Output::fail(1, format!("error: cannot read {file}: {e}\n")))?;
    parse_graph(&text).map_err(|e| Output::fail(1, format!("error: {e}\n")))
}

fn with_ot(file: &str, f: impl FnOnce(&OTStDigraph) -> Output) -> Output {
    let g = match read_graph(file) {
        Ok(g) => g,
        Err(out) => return out,
    };
    match OTStDigraph::classify(g) {
        Ok(g) => f(&g),
        Err(e) => Output::fail(1, format!("error: {e}\n")),
    }
}

fn names(g: &EmbeddedDigraph, vs: &[VertexId]) -> String {
    vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(",")
}

fn validate(file: &str) -> Output {
    let g = match read_graph(file) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let mut out = String::new();
    let _ = writeln!(out, "st-digraph: ok");
    let _ = writeln!(
        out,
        "vertices={} edges={} faces={}",
        g.n(),
        g.m(),
        g.faces().len()
    );
    let _ = writeln!(
        out,
        "source={} sink={}",
        g.name(g.source()),
        g.name(g.sink())
    );
    match OTStDigraph::classify(g.clone()) {
        Ok(ot) => {
            let _ = writeln!(out, "outerplanar-triangulated: ok");
            let _ = writeln!(out, "left={}", names(&g, ot.left()));
            let _ = writeln!(out, "right={}", names(&g, ot.right()));
            Output::ok(out)
        }
        Err(e) => {
            let _ = writeln!(out, "outerplanar-triangulated: {e}");
            Output {
                code: 1,
                stdout: out,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn check_file(file: &str) -> Output {
    let g = match read_graph(file) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let rhombi = match find_rhombi(&g) {
        Ok(r) => r,
        Err(e) => return Output::fail(1, format!("error: {e}\n")),
    };
    let mut out = format!("rhombi={}\n", rhombi.len());
    for r in &rhombi {
        let _ = writeln!(
            out,
            "rhombus median={} apexes={},{}",
            g.edge_label(r.median),
            g.name(r.left_apex),
            g.name(r.right_apex)
        );
    }
    match hamiltonian_path(&g) {
        Some(p) => {
            let _ = writeln!(out, "hamiltonian=yes path={}", names(&g, &p));
        }
        None => out.push_str("hamiltonian=no\n"),
    }
    if rhombi.is_empty() != hamiltonian_path(&g).is_some() {
        return Output {
            code: 2,
            stdout: out,
            stderr: "error: rhombus test and path disagree\n".into(),
        };
    }
    Output::ok(out)
}

fn check_batch(batch: usize, seed: u64, max_n: usize) -> Output {
    let max_chain = max_n.max(3) - 2;
    let (mut agree, mut disagree, mut violations, mut skipped) = (0, 0, 0, 0);
    let mut stderr = String::new();
    for i in 0..batch as u64 {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let total = 1 + (s as usize % max_chain);
        let left = 1 + (s as usize / 7) % total;
        let bias = (s % 5) as f64 / 4.0;
        let g = random_ot(&GenProfile::new(left, total - left, bias, s));
        let d = decompose(&g);
        let r = match solve_decomposed(&g, &d) {
            Ok(r) => r,
            Err(e) => {
                violations += 1;
                let _ = writeln!(stderr, "seed {s}: {e}");
                continue;
            }
        };
        if !verify_solution(&g, &r).is_empty() {
            violations += 1;
        }
        match exhaustive_min_crossings(&g) {
            Ok(c) if c == r.total_crossings => agree += 1,
            Ok(c) => {
                disagree += 1;
                let _ = writeln!(stderr, "seed {s}: solver {} oracle {c}", r.total_crossings);
            }
            Err(_) => skipped += 1,
        }
    }
    let stdout = format!(
        "instances  agree  disagree  violations  skipped\n{batch:>9}  {agree:>5}  {disagree:>8}  {violations:>10}  {skipped:>7}\n"
    );
    let code = if disagree + violations > 0 { 2 } else { 0 };
    Output {
        code,
        stdout,
        stderr,
    }
}

pub fn decomposition_listing(g: &OTStDigraph, d: &Decomposition) -> String {
    let graph = g.graph();
    let mut out = format!(
        "elements={} polygons={}\n",
        d.elements.len(),
        d.polygon_count()
    );
    for (i, e) in d.elements.iter().enumerate() {
        match e {
            DecompositionElement::FreeVertex(v) => {
                let _ = writeln!(out, "{i} free {}", graph.name(*v));
            }
            DecompositionElement::Polygon(p) => {
                let limit = |e: Option<crate::graph::DirectedEdge>| {
                    e.map_or_else(|| "-".to_string(), |e| graph.edge_label(e))
                };
                let _ = writeln!(
                    out,
                    "{i} polygon median={} left=[{}] right=[{}] lower={} upper={}",
                    graph.edge_label(p.median),
                    names(graph, &p.left_chain),
                    names(graph, &p.right_chain),
                    limit(p.lower_limit),
                    limit(p.upper_limit)
                );
            }
        }
    }
    let shared: Vec<String> = d.shared.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "shared=[{}]", shared.join(","));
    out
}

fn embed(g: &OTStDigraph, show: impl FnOnce(&crate::book::BookEmbedding) -> String) -> Output {
    let r = match solve_decomposed(g, &decompose(g)) {
        Ok(r) => r,
        Err(e) => return Output::fail(2, format!("error: {e}\n")),
    };
    let b = match to_book_embedding(g, &r) {
        Ok(b) => b,
        Err(e) => return Output::fail(2, format!("error: {e}\n")),
    };
    if let Some(v) = validate_embedding(g.graph(), &b).first() {
        return Output::fail(2, format!("error: invalid embedding: {v}\n"));
    }
    Output::ok(show(&b))
}

fn bench(sizes: &[usize], repeat: usize) -> Output {
    let mut out =
        String::from("n          polygons  crossings  decompose_ms  solve_ms  total_ms  ratio\n");
    let mut previous: Option<(usize, f64)> = None;
    for &size in sizes {
        let g = stacked_polygons(size.saturating_sub(4) / 3);
        let (mut best_d, mut best_s) = (f64::MAX, f64::MAX);
        let (mut polygons, mut crossings) = (0, 0);
        for _ in 0..repeat {
            let t0 = Instant::now();
            let d = decompose(&g);
            let t1 = Instant::now();
            let r = match solve_decomposed(&g, &d) {
                Ok(r) => r,
                Err(e) => return Output::fail(2, format!("error: {e}\n")),
            };
            let t2 = Instant::now();
            best_d = best_d.min((t1 - t0).as_secs_f64() * 1e3);
            best_s = best_s.min((t2 - t1).as_secs_f64() * 1e3);
            polygons = d.polygon_count();
            crossings = r.total_crossings;
        }
        let total = best_d + best_s;
        // Time growth relative to linear growth from the previous size.
        let ratio = previous.map_or_else(
            || "-".to_string(),
            |(n0, t0)| format!("{:.2}", (total / t0) / (g.n() as f64 / n0 as f64)),
        );
        let _ = writeln!(
            out,
            "{:<9}  {polygons:>8}  {crossings:>9}  {best_d:>12.2}  {best_s:>8.2}  {total:>8.2}  {ratio:>5}",
            g.n()
        );
        previous = Some((g.n(), total));
    }
    Output::ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
    }

    fn otst(args: &[&str]) -> Output {
        run(std::iter::once("otst").chain(args.iter().copied()))
    }

    #[test]
    fn solve_fixtures() {
        let expect = [("triangle", 0), ("rhombus", 1), ("fig9", 5)];
        for (name, c) in expect {
            let out = otst(&["solve", &fixture(name)]);
            assert_eq!(out.code, 0, "{}", out.stderr);
            assert!(
                out.stdout.starts_with(&format!("crossings={c}\n")),
                "{name}"
            );
        }
    }

    #[test]
    fn check_reports_rhombus() {
        let out = otst(&["check", &fixture("fig9")]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("rhombi=1\n"));
        assert!(out.stdout.ends_with("hamiltonian=no\n"));
    }

    #[test]
    fn batch_check_agrees() {
        let out = otst(&["check", "--batch", "40", "--seed", "5", "--max-n", "16"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.lines().nth(1).unwrap().contains(" 0 "));
    }

    #[test]
    fn invalid_input_exits_one() {
        assert_eq!(otst(&["solve", "/nonexistent/graph.json"]).code, 1);
        assert_eq!(otst(&["frobnicate"]).code, 1);
        assert_eq!(otst(&["gen", "--left", "0", "--right", "0"]).code, 1);
    }

    #[test]
    fn gen_then_solve() {
        let out = otst(&["gen", "--left", "5", "--right", "4", "--seed", "11"]);
        assert_eq!(out.code, 0);
        assert!(out.stderr.starts_with("# seed=11"));
        assert_eq!(
            out.stdout,
            otst(&["gen", "--left", "5", "--right", "4", "--seed", "11"]).stdout
        );
        let path = std::env::temp_dir().join(format!("otst-gen-{}.json", std::process::id()));
        std::fs::write(&path, &out.stdout).unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(otst(&["validate", p]).code, 0);
        assert_eq!(otst(&["embed", p]).code, 0);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn render_writes_svg() {
        let path = std::env::temp_dir().join(format!("otst-render-{}.svg", std::process::id()));
        let out = otst(&["render", &fixture("rhombus"), "-o", path.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn small_bench() {
        let out = otst(&["bench", "--sizes", "100,1000", "--repeat", "1"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.lines().count(), 3);
    }
}
