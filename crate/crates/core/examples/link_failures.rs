//! Links that fail independently each iteration. Cost counts every attempted
//! link; the survived count is shown alongside.
//!
//! cargo run --release --example link_failures -- [replicates]

use active_consensus::sim::{sweep, GridAxis, SimConfig};

fn main() -> active_consensus::Result<()> {
    let replicates = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);

    let base = SimConfig { n: 100, d: 10, alpha: 0.3, replicates, ..SimConfig::default() };
    let grid = [GridAxis::parse("p_fail=0.1,0.3,0.5,0.7,0.9")?, GridAxis::parse("scheme=global,local")?];
    println!(
        "{:>6} {:<7} {:>10} {:>10} {:>11} {:>11} {:>8}",
        "p_fail", "scheme", "iters", "base iters", "attempted", "survived", "saving"
    );
    for p in sweep(&grid, &base, jobs)? {
        let a = &p.aggregate;
        println!(
            "{:>6.1} {:<7} {:>10.1} {:>10.1} {:>11.0} {:>11.0} {:>7.1}%",
            p.config.p_fail,
            p.config.scheme,
            a.iterations.mean,
            a.baseline_iterations.mean,
            a.cost_attempted.mean,
            a.cost_survived.mean,
            100.0 * (1.0 - a.cost_ratio.mean)
        );
    }
    Ok(())
}
