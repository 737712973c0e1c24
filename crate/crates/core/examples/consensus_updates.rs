//! Full and link-masked consensus updates on a random graph: disagreement
//! shrinks by at least |W|² per full step and the mean never moves.
//!
//! cargo run --example consensus_updates

use active_consensus::consensus::{disagreement, full_update, has_converged, init_states, masked_update, spread, LinkMask};
use active_consensus::rng::rng_from_seed;
use active_consensus::spectral::step_info;
use active_consensus::topology::{build_laplacian, gen_uniform};
use rand::Rng;

fn main() -> active_consensus::Result<()> {
    let g = gen_uniform(60, 6, 11)?;
    let l = build_laplacian(&g);
    let info = step_info(&l)?;
    let bound = info.contraction * info.contraction;

    let mut x = init_states(g.node_count(), 4);
    let mean = x.mean();
    println!("step {:.4}, |W|^2 = {bound:.4}", info.step);
    println!("{:>4} {:>12} {:>10} {:>8}", "t", "disagreement", "spread", "ratio");
    let mut before = disagreement(&x, &l)?;
    while !has_converged(&x.values, 1e-3) {
        x = full_update(&x, &l, info.step)?;
        let after = disagreement(&x, &l)?;
        println!("{:>4} {:>12.4e} {:>10.4e} {:>8.4}", x.t, after, spread(&x.values), after / before);
        before = after;
    }
    println!("mean drift {:.2e}", (x.mean() - mean).abs());

    // Half of the links at random each step.
    let mut rng = rng_from_seed(2);
    let mut y = init_states(g.node_count(), 4);
    while !has_converged(&y.values, 1e-3) {
        let mask = LinkMask { bits: (0..g.edge_count()).map(|_| rng.random_bool(0.5)).collect() };
        y = masked_update(&y, &g, &mask, info.step)?;
    }
    println!("random half of the links: {} iterations vs {} with all links", y.t, x.t);
    Ok(())
}
