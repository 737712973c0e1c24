//! Both schemes on the four-cluster network with high-degree hubs.
//!
//! cargo run --release --example clustered_network -- [replicates] [alpha]

use active_consensus::sim::{sweep, GridAxis, SimConfig, TopologyKind};

fn main() -> active_consensus::Result<()> {
    let mut args = std::env::args().skip(1);
    let replicates = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let alpha = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.3);
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);

    let g = active_consensus::topology::gen_clustered(0)?;
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    println!("{} nodes, {} edges, degrees {}..{}", g.node_count(), g.edge_count(), degrees[0], degrees[degrees.len() - 1]);

    let base = SimConfig { topology: TopologyKind::Clustered, alpha, replicates, ..SimConfig::default() };
    for p in sweep(&[GridAxis::parse("scheme=global,local")?], &base, jobs)? {
        let a = &p.aggregate;
        println!(
            "{:<7} saving {:>5.1}%  time ratio {:.3}  ({:.0} vs {:.0} iterations)",
            p.config.scheme,
            100.0 * (1.0 - a.cost_ratio.mean),
            a.time_ratio.mean,
            a.iterations.mean,
            a.baseline_iterations.mean
        );
    }
    Ok(())
}
