//! The budgeted box QP on its own: solve, inspect the budget, round by
//! sampling.
//!
//! cargo run --example qp_relaxation

use active_consensus::matrix::Matrix;
use active_consensus::qp::{project, sample, solve, BudgetedQp, SolverOptions};
use active_consensus::rng::rng_from_seed;

fn main() -> active_consensus::Result<()> {
    let y = [1.0, 1.0];
    println!("project {y:?} onto budget 1: {:?}", project(&y, &[1.0, 1.0], 1.0));

    // Four links, the first two more useful than the rest, budget for two.
    let a = Matrix::from_rows(&[
        vec![2.0, 0.5, 0.0, 0.0],
        vec![0.5, 2.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 0.2],
        vec![0.0, 0.0, 0.2, 1.0],
    ]);
    let g = vec![-3.0, -2.5, -0.8, -0.6];
    let costs = vec![1.0; 4];
    let qp = BudgetedQp::dense(a, g, costs.clone(), 2.0)?;
    let sol = solve(&qp, SolverOptions::default());
    println!(
        "relaxed solution {:?}\nobjective {:.6}, expected cost {:.4}, {} iterations, converged {}",
        sol.probs.p.iter().map(|p| (p * 1e4).round() / 1e4).collect::<Vec<_>>(),
        sol.objective,
        sol.probs.expected_cost(&costs),
        sol.iterations,
        sol.converged
    );

    let mut rng = rng_from_seed(9);
    let draws = 20_000;
    let mut hits = [0usize; 4];
    let mut over_budget = 0;
    for _ in 0..draws {
        let mask = sample(&sol.probs, &mut rng);
        for (h, &b) in hits.iter_mut().zip(&mask.bits) {
            *h += usize::from(b);
        }
        over_budget += usize::from(mask.count() > 2);
    }
    let freq: Vec<f64> = hits.iter().map(|&h| h as f64 / draws as f64).collect();
    println!("sampled frequencies {freq:.3?}, {over_budget} of {draws} draws exceed the budget");
    Ok(())
}
