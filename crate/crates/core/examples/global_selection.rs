//! One round of global link selection: relaxed objective against the
//! rounded mask, then a full run compared with the all-links baseline.
//!
//! cargo run --release --example global_selection

use active_consensus::consensus::init_states;
use active_consensus::qp::{solve, SolverOptions};
use active_consensus::rng::rng_from_seed;
use active_consensus::select::global::{build_global_qp, objective_value, select_links_global};
use active_consensus::sim::{compare_on_graph, Scheme, SimConfig};
use active_consensus::spectral::step_info;
use active_consensus::topology::{build_laplacian, gen_uniform};

fn main() -> active_consensus::Result<()> {
    let g = gen_uniform(100, 20, 1)?;
    let step = step_info(&build_laplacian(&g))?.step;
    let x = init_states(g.node_count(), 1);
    let alpha = 0.3;

    let qp = build_global_qp(&g, &x, step, alpha)?;
    let relaxed = solve(&qp, SolverOptions::default());
    let mut rng = rng_from_seed(1);
    let selection = select_links_global(&g, &x, step, alpha, &mut rng)?;
    let all = vec![1.0; g.edge_count()];
    println!("edges {}, budget {:.0}", g.edge_count(), qp.budget());
    println!("disagreement now          {:.4}", objective_value(&g, &x, step, &vec![0.0; g.edge_count()])?);
    println!("after all links           {:.4}", objective_value(&g, &x, step, &all)?);
    println!("relaxed optimum           {:.4}", objective_value(&g, &x, step, &relaxed.probs.p)?);
    println!(
        "sampled mask ({} links)  {:.4}",
        selection.mask.count(),
        objective_value(&g, &x, step, &selection.mask.as_f64())?
    );

    let config = SimConfig { scheme: Scheme::Global, alpha, seed: 1, ..SimConfig::default() };
    let cmp = compare_on_graph(&config, &g)?;
    println!(
        "\nrun to consensus: {} iterations vs {} (time ratio {:.3}), cost {:.0} vs {:.0} (cost ratio {:.3})",
        cmp.selective.iterations,
        cmp.baseline.iterations,
        cmp.time_ratio.unwrap_or(f64::NAN),
        cmp.selective.total_cost_attempted,
        cmp.baseline.total_cost_attempted,
        cmp.cost_ratio.unwrap_or(f64::NAN)
    );
    Ok(())
}
