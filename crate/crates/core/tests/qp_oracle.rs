mod common;

use active_consensus::matrix::Matrix;
use active_consensus::qp::{project, solve, BudgetedQp, SolverOptions};
use common::{active_set_min, quadratic, random_psd};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_instance(rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<f64>, Vec<f64>, f64) {
    let m = rng.random_range(1..=6);
    let a = random_psd(m, rng);
    let g: Vec<f64> = (0..m).map(|_| 2.0 * rng.sample::<f64, _>(StandardNormal)).collect();
    let c: Vec<f64> = (0..m).map(|_| if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.2..2.0) }).collect();
    let budget = rng.random_range(0.0..1.0) * c.iter().sum::<f64>();
    (a, g, c, budget)
}

#[test]
fn solver_matches_active_set_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let (a, g, c, budget) = random_instance(&mut rng);
        let (_, oracle) = active_set_min(&a, &g, &c, budget);
        let qp = BudgetedQp::dense(Matrix::from_rows(&a), g.clone(), c.clone(), budget).unwrap();
        let sol = solve(&qp, SolverOptions::default());
        assert!(qp.is_feasible(&sol.probs.p, 1e-9), "case {case}: infeasible {:?}", sol.probs.p);
        let direct = quadratic(&a, &g, &sol.probs.p);
        assert!((direct - sol.objective).abs() <= 1e-9 * (1.0 + direct.abs()), "case {case}");
        assert!((direct - oracle).abs() <= 1e-5, "case {case}: solver {direct} oracle {oracle}");
    }
}

#[test]
fn projection_matches_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let steps = 1000;
    for case in 0..50 {
        let y = [rng.random_range(-0.5..1.5), rng.random_range(-0.5..1.5)];
        let c = [rng.random_range(0.1..2.0), rng.random_range(0.1..2.0)];
        let budget = rng.random_range(0.0..1.0) * (c[0] + c[1]);
        let p = project(&y, &c, budget);
        assert!(p.iter().all(|v| (0.0..=1.0).contains(v)));
        assert!(c[0] * p[0] + c[1] * p[1] <= budget + 1e-9, "case {case}");
        let dist = |b: [f64; 2]| (b[0] - y[0]).powi(2) + (b[1] - y[1]).powi(2);
        let mut best = f64::INFINITY;
        for i in 0..=steps {
            for j in 0..=steps {
                let b = [i as f64 / steps as f64, j as f64 / steps as f64];
                if c[0] * b[0] + c[1] * b[1] <= budget {
                    best = best.min(dist(b));
                }
            }
        }
        // Never farther than the grid optimum, and within one grid cell of it.
        let got = dist([p[0], p[1]]);
        assert!(got <= best + 1e-12, "case {case}: {got} > {best}");
        assert!(best.sqrt() - got.sqrt() <= 2f64.sqrt() * 1e-3 + 1e-12, "case {case}");
    }
}

#[test]
fn projection_is_locally_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let m = rng.random_range(1..=8);
        let y: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..2.0)).collect();
        let c: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..2.0)).collect();
        let budget = rng.random_range(0.0..1.0) * c.iter().sum::<f64>();
        let p = project(&y, &c, budget);
        let dist = |b: &[f64]| b.iter().zip(&y).map(|(x, z)| (x - z).powi(2)).sum::<f64>();
        let spent = |b: &[f64]| b.iter().zip(&c).map(|(x, z)| x * z).sum::<f64>();
        assert!(spent(&p) <= budget + 1e-9);
        let base = dist(&p);
        for _ in 0..20 {
            let q: Vec<f64> = p.iter().map(|v| v + 1e-4 * rng.random_range(-1.0..1.0)).collect();
            if q.iter().all(|v| (0.0..=1.0).contains(v)) && spent(&q) <= budget {
                assert!(dist(&q) >= base - 1e-12);
            }
        }
    }
}

#[test]
fn accepted_steps_never_raise_the_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let (a, g, c, budget) = random_instance(&mut rng);
        let qp = BudgetedQp::dense(Matrix::from_rows(&a), g.clone(), c.clone(), budget).unwrap();
        let mut last = 0.0;
        for iters in [1, 2, 4, 8, 16, 64, 256] {
            let sol = solve(&qp, SolverOptions { tol: 0.0, max_iter: iters });
            assert!(sol.objective <= last + 1e-12, "{} > {last}", sol.objective);
            last = sol.objective;
        }
    }
}
