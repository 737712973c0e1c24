//! The per-node scheme on star and chain networks of growing size.
//!
//! cargo run --release --example star_chain -- [replicates]

use active_consensus::sim::{sweep, GridAxis, Scheme, SimConfig, TopologyKind};

fn main() -> active_consensus::Result<()> {
    let replicates = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);

    println!("{:<6} {:>3} {:>10} {:>10} {:>8} {:>10}", "family", "n", "cost", "iters", "saving", "time ratio");
    for topology in [TopologyKind::Star, TopologyKind::Chain] {
        let base = SimConfig { topology, scheme: Scheme::Local, alpha: 0.3, replicates, ..SimConfig::default() };
        for p in sweep(&[GridAxis::parse("n=10,20,30,40,50")?], &base, jobs)? {
            let a = &p.aggregate;
            println!(
                "{:<6} {:>3} {:>10.0} {:>10.1} {:>7.1}% {:>10.3}",
                topology.name(),
                p.config.n,
                a.cost_attempted.mean,
                a.iterations.mean,
                100.0 * (1.0 - a.cost_ratio.mean),
                a.time_ratio.mean
            );
        }
    }
    Ok(())
}
