//! Per-node link selection: each node's relaxed problem over its own links,
//! the merged edge probabilities and a full run against the baseline.
//!
//! cargo run --release --example local_selection

use active_consensus::consensus::init_states;
use active_consensus::qp::{solve, SolverOptions};
use active_consensus::rng::rng_from_seed;
use active_consensus::select::local::{build_local_qp, select_links_local, shared_neighbor_prediction, PredictionSign};
use active_consensus::sim::{compare_on_graph, Scheme, SimConfig};
use active_consensus::spectral::step_info;
use active_consensus::topology::{build_laplacian, gen_uniform};

fn main() -> active_consensus::Result<()> {
    let g = gen_uniform(30, 6, 2)?;
    let step = step_info(&build_laplacian(&g))?.step;
    let x = init_states(g.node_count(), 2);
    let alpha = 0.3;
    let sign = PredictionSign::Consistent;

    let v = 0;
    println!("node {v} (x = {:.3}) and its neighbors:", x.values[v]);
    let problem = build_local_qp(&g, &x, v, step, alpha, sign)?;
    let sol = solve(&problem.qp, SolverOptions::default());
    for (&u, p) in g.neighbors(v)?.iter().zip(&sol.probs.p) {
        let predicted = shared_neighbor_prediction(&g, &x, v, u, step, sign)?;
        println!("  u={u:<3} x={:>7.3} predicted={:>7.3} p={:.3}", x.values[u], predicted, p);
    }
    println!("  budget {:.2}, spent {:.3}", problem.qp.budget(), sol.probs.p.iter().sum::<f64>());

    let mut rng = rng_from_seed(2);
    let selection = select_links_local(&g, &x, step, alpha, sign, &mut rng)?;
    println!(
        "merged: expected {:.2} links of {}, sampled {}",
        selection.probs.p.iter().sum::<f64>(),
        g.edge_count(),
        selection.mask.count()
    );

    let config = SimConfig { scheme: Scheme::Local, alpha, seed: 2, ..SimConfig::default() };
    let cmp = compare_on_graph(&config, &g)?;
    println!(
        "run to consensus: cost ratio {:.3}, time ratio {:.3}",
        cmp.cost_ratio.unwrap_or(f64::NAN),
        cmp.time_ratio.unwrap_or(f64::NAN)
    );
    Ok(())
}
