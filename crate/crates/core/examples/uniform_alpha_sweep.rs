//! Cost and time ratios of both selection schemes as the per-iteration
//! budget fraction grows, on 100-node graphs of mean degree 20.
//!
//! cargo run --release --example uniform_alpha_sweep -- [replicates] [degree]

use active_consensus::sim::{sweep, GridAxis, SimConfig};

fn main() -> active_consensus::Result<()> {
    let mut args = std::env::args().skip(1);
    let replicates = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let d = args.next().and_then(|a| a.parse().ok()).unwrap_or(20);
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);

    let base = SimConfig { n: 100, d, replicates, ..SimConfig::default() };
    let grid = [GridAxis::parse("scheme=global,local")?, GridAxis::parse("alpha=0.3,0.4,0.5,0.6,0.7,0.8")?];
    println!("{:<7} {:>5} {:>15} {:>15}", "scheme", "alpha", "cost ratio", "time ratio");
    for p in sweep(&grid, &base, jobs)? {
        let a = &p.aggregate;
        println!(
            "{:<7} {:>5.1} {:>7.3} ± {:<5.3} {:>7.3} ± {:<5.3}",
            p.config.scheme, p.config.alpha, a.cost_ratio.mean, a.cost_ratio.sd, a.time_ratio.mean, a.time_ratio.sd
        );
    }
    Ok(())
}
