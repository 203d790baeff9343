//! Decomposition plus solving on chains of stacked polygons, 10^3 to 10^6
//! vertices. Run with --release.

use otst::cli::run;

fn main() {
    let out = run(["otst", "bench", "--sizes", "1000,10000,100000,1000000"]);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
}
