//! Convex quadratic programs over the unit box intersected with a budget
//! half-space,
//!
//! ```text
//! minimize ½ bᵀAb + gᵀb   subject to 0 ≤ b ≤ 1,  cᵀb ≤ C
//! ```
//!
//! solved by projected gradient, plus the Bernoulli rounding that turns the
//! relaxed solution into a link mask.

use std::fmt::Debug;

use log::debug;
use rand::Rng;

use crate::consensus::LinkMask;
use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};

/// A symmetric positive semidefinite linear operator.
pub trait SymmetricOperator: Debug + Send + Sync {
    fn dim(&self) -> usize;

    /// Writes `A x` into `out`.
    fn apply_into(&self, x: &[f64], out: &mut [f64]);

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.apply_into(x, &mut out);
        out
    }

    /// Materializes the operator column by column.
    fn to_dense(&self) -> Matrix {
        let m = self.dim();
        let mut a = Matrix::zeros(m, m);
        let mut unit = vec![0.0; m];
        let mut col = vec![0.0; m];
        for j in 0..m {
            unit[j] = 1.0;
            self.apply_into(&unit, &mut col);
            for i in 0..m {
                a[(i, j)] = col[i];
            }
            unit[j] = 0.0;
        }
        a
    }
}

impl SymmetricOperator for Matrix {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(self.row(i), x);
        }
    }
}

#[derive(Debug, Clone)]
pub struct BudgetedQp<H = Matrix> {
    hessian: H,
    linear: Vec<f64>,
    costs: Vec<f64>,
    budget: f64,
}

impl BudgetedQp<Matrix> {
    /// Dense problem; rejects matrices asymmetric beyond 1e-9.
    pub fn dense(a: Matrix, linear: Vec<f64>, costs: Vec<f64>, budget: f64) -> Result<Self> {
        let asym = a.max_asymmetry();
        if asym > 1e-9 {
            return Err(Error::NotSymmetric(asym));
        }
        Self::with_operator(a, linear, costs, budget)
    }
}

impl<H: SymmetricOperator> BudgetedQp<H> {
    pub fn with_operator(hessian: H, linear: Vec<f64>, costs: Vec<f64>, budget: f64) -> Result<Self> {
        let m = hessian.dim();
        for len in [linear.len(), costs.len()] {
            if len != m {
                return Err(Error::DimensionMismatch { expected: m, actual: len });
            }
        }
        if let Some(c) = costs.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(Error::InvalidConfig(format!("edge cost {c} must be finite and nonnegative")));
        }
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(Error::InvalidConfig(format!("budget {budget} must be finite and nonnegative")));
        }
        Ok(Self { hessian, linear, costs, budget })
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn hessian(&self) -> &H {
        &self.hessian
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    /// `½ bᵀAb + gᵀb`.
    pub fn objective(&self, b: &[f64]) -> f64 {
        0.5 * dot(b, &self.hessian.apply(b)) + dot(&self.linear, b)
    }

    pub fn is_feasible(&self, b: &[f64], tol: f64) -> bool {
        b.iter().all(|&v| (-tol..=1.0 + tol).contains(&v)) && dot(&self.costs, b) <= self.budget + tol
    }
}

/// Relaxed link-usage probabilities in canonical edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkProbabilities {
    pub p: Vec<f64>,
}

impl LinkProbabilities {
    pub fn zeros(m: usize) -> Self {
        Self { p: vec![0.0; m] }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn expected_cost(&self, costs: &[f64]) -> f64 {
        dot(&self.p, costs)
    }
}

/// Euclidean projection of `y` onto `{0 ≤ b ≤ 1, cᵀb ≤ C}`.
///
/// If the box clamp already meets the budget it is the answer. Otherwise the
/// projection is `clamp(y - θc)` for the unique `θ > 0` making the budget
/// tight. `θ` is bracketed and bisected; since the cost of `clamp(y - θc)` is
/// piecewise linear in `θ`, each bisection step first tries the exact linear
/// solve on the current segment and keeps it when it lands inside the bracket.
/// Zero-cost coordinates are only clamped.
pub fn project(y: &[f64], costs: &[f64], budget: f64) -> Vec<f64> {
    debug_assert_eq!(y.len(), costs.len());
    let clamped: Vec<f64> = y.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    if dot(&clamped, costs) <= budget {
        return clamped;
    }
    if budget <= 0.0 {
        return clamped.iter().zip(costs).map(|(&v, &c)| if c > 0.0 { 0.0 } else { v }).collect();
    }

    let spent = |theta: f64| -> (f64, f64) {
        let (mut total, mut slope) = (0.0, 0.0);
        for (&yi, &ci) in y.iter().zip(costs) {
            if ci > 0.0 {
                let z = yi - theta * ci;
                if z >= 1.0 {
                    total += ci;
                } else if z > 0.0 {
                    total += ci * z;
                    slope += ci * ci;
                }
            }
        }
        (total, slope)
    };

    let mut lo = 0.0_f64;
    let mut hi = y
        .iter()
        .zip(costs)
        .filter(|(_, &c)| c > 0.0)
        .map(|(&v, &c)| v / c)
        .fold(0.0_f64, f64::max);
    let target_tol = 1e-12 * budget.max(1.0);
    let mut theta = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (total, slope) = spent(theta);
        let excess = total - budget;
        if excess.abs() <= target_tol {
            break;
        }
        if excess > 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
        let newton = if slope > 0.0 { theta + excess / slope } else { f64::NAN };
        theta = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }

    y.iter()
        .zip(costs)
        .map(|(&v, &c)| if c > 0.0 { (v - theta * c).clamp(0.0, 1.0) } else { v.clamp(0.0, 1.0) })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stop once an accepted step moves no coordinate by more than this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-7, max_iter: 5000 }
    }
}

#[derive(Debug, Clone)]
pub struct QpSolution {
    pub probs: LinkProbabilities,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
}

const POWER_ITERATIONS: usize = 50;

/// Largest eigenvalue estimate by power iteration from the all-ones start.
pub fn estimate_lambda_max<H: SymmetricOperator>(a: &H) -> f64 {
    let m = a.dim();
    if m == 0 {
        return 0.0;
    }
    let mut v = vec![1.0 / (m as f64).sqrt(); m];
    let mut av = vec![0.0; m];
    let mut estimate = 0.0;
    for _ in 0..POWER_ITERATIONS {
        a.apply_into(&v, &mut av);
        estimate = dot(&v, &av);
        let norm = dot(&av, &av).sqrt();
        if norm <= f64::MIN_POSITIVE {
            return 0.0;
        }
        for (vi, ai) in v.iter_mut().zip(&av) {
            *vi = ai / norm;
        }
    }
    estimate.max(0.0)
}

/// Projected gradient from `b = 0` with step `1 / λmax(A)`.
///
/// A step that would raise the objective is rejected and the step halved, so
/// the objective never increases across accepted iterates. Hitting
/// `max_iter` returns the last accepted iterate with `converged = false`.
pub fn solve<H: SymmetricOperator>(qp: &BudgetedQp<H>, opts: SolverOptions) -> QpSolution {
    let m = qp.dim();
    let mut b = vec![0.0; m];
    // With no budget only zero-cost coordinates can move.
    if m == 0 || (qp.budget == 0.0 && qp.costs.iter().all(|&c| c > 0.0)) {
        return QpSolution { probs: LinkProbabilities { p: b }, objective: 0.0, iterations: 0, converged: true };
    }

    let lambda = estimate_lambda_max(&qp.hessian);
    let grad_scale = qp.linear.iter().fold(0.0_f64, |acc, g| acc.max(g.abs()));
    let mut step = if lambda > 1e-12 * grad_scale.max(1.0) {
        1.0 / lambda
    } else if grad_scale > 0.0 {
        // Linear objective: a step that saturates the box.
        1e6 / grad_scale
    } else {
        return QpSolution { probs: LinkProbabilities { p: b }, objective: 0.0, iterations: 0, converged: true };
    };

    let mut ab = vec![0.0; m];
    let mut ab_next = vec![0.0; m];
    let mut objective = 0.0_f64;
    let mut y = vec![0.0; m];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        for i in 0..m {
            y[i] = b[i] - step * (ab[i] + qp.linear[i]);
        }
        let next = project(&y, &qp.costs, qp.budget);
        qp.hessian.apply_into(&next, &mut ab_next);
        let next_objective = 0.5 * dot(&next, &ab_next) + dot(&qp.linear, &next);
        if next_objective > objective + 1e-14 * (1.0 + objective.abs()) {
            step *= 0.5;
            if step < 1e-300 {
                break;
            }
            continue;
        }
        let moved = b.iter().zip(&next).fold(0.0_f64, |acc, (x, z)| acc.max((x - z).abs()));
        b = next;
        std::mem::swap(&mut ab, &mut ab_next);
        objective = next_objective;
        if moved <= opts.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        debug!("projected gradient stopped at max_iter={} (m={m})", opts.max_iter);
    }
    QpSolution { probs: LinkProbabilities { p: b }, objective, iterations, converged }
}

/// Independent Bernoulli draws with `P(b_e = 1) = p_e`.
pub fn sample<R: Rng + ?Sized>(probs: &LinkProbabilities, rng: &mut R) -> LinkMask {
    LinkMask { bits: probs.p.iter().map(|&p| rng.random::<f64>() < p).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn projection_examples() {
        assert_eq!(project(&[0.2, 0.7], &[1.0, 1.0], 2.0), vec![0.2, 0.7]);
        assert_eq!(project(&[2.0, -1.0], &[1.0, 1.0], 2.0), vec![1.0, 0.0]);
        let p = project(&[1.0, 1.0], &[1.0, 1.0], 1.0);
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12, "{p:?}");
    }

    #[test]
    fn projection_meets_budget_tightly() {
        let y = [0.9, 0.4, 1.7, -0.2, 0.65];
        let c = [1.0, 2.0, 0.5, 1.0, 3.0];
        let p = project(&y, &c, 1.3);
        assert!((dot(&p, &c) - 1.3).abs() <= 1e-9);
        assert!(p.iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn zero_cost_coordinates_are_only_clamped() {
        let p = project(&[1.5, 0.8, 0.8], &[0.0, 1.0, 1.0], 0.4);
        assert_eq!(p[0], 1.0);
        assert!((p[1] - 0.2).abs() < 1e-12 && (p[2] - 0.2).abs() < 1e-12);
        let z = project(&[0.7, 0.9], &[0.0, 1.0], 0.0);
        assert_eq!(z, vec![0.7, 0.0]);
    }

    #[test]
    fn linear_objective_saturates_box() {
        let m = 4;
        let qp = BudgetedQp::dense(Matrix::zeros(m, m), vec![-1.0; m], vec![1.0; m], m as f64).unwrap();
        let sol = solve(&qp, SolverOptions::default());
        assert!(sol.converged);
        assert!(sol.probs.p.iter().all(|&v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn constant_objective_returns_start() {
        let qp = BudgetedQp::dense(Matrix::zeros(3, 3), vec![0.0; 3], vec![1.0; 3], 2.0).unwrap();
        assert_eq!(solve(&qp, SolverOptions::default()).probs.p, vec![0.0; 3]);
    }

    #[test]
    fn identity_with_budget_one() {
        let qp = BudgetedQp::dense(Matrix::identity(2), vec![-1.0, -1.0], vec![1.0, 1.0], 1.0).unwrap();
        let sol = solve(&qp, SolverOptions::default());
        assert!((sol.probs.p[0] - 0.5).abs() < 1e-6 && (sol.probs.p[1] - 0.5).abs() < 1e-6);
        assert!((sol.objective + 0.75).abs() < 1e-9);
    }

    #[test]
    fn zero_budget_returns_zeros() {
        let qp = BudgetedQp::dense(Matrix::identity(2), vec![-5.0, -5.0], vec![1.0, 1.0], 0.0).unwrap();
        let sol = solve(&qp, SolverOptions::default());
        assert_eq!(sol.probs.p, vec![0.0, 0.0]);
        assert_eq!(sol.iterations, 0);
    }

    #[test]
    fn max_iter_exhaustion_is_flagged() {
        let a = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1e-6]]);
        let qp = BudgetedQp::dense(a, vec![-1.0, -1e-6], vec![1.0, 1.0], 2.0).unwrap();
        let sol = solve(&qp, SolverOptions { tol: 1e-15, max_iter: 3 });
        assert!(!sol.converged);
        assert_eq!(sol.iterations, 3);
        assert!(qp.is_feasible(&sol.probs.p, 1e-12));
    }

    #[test]
    fn rejects_malformed_problems() {
        let asym = Matrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(matches!(BudgetedQp::dense(asym, vec![0.0; 2], vec![1.0; 2], 1.0), Err(Error::NotSymmetric(_))));
        assert!(BudgetedQp::dense(Matrix::identity(2), vec![0.0; 3], vec![1.0; 2], 1.0).is_err());
        assert!(BudgetedQp::dense(Matrix::identity(2), vec![0.0; 2], vec![-1.0; 2], 1.0).is_err());
        assert!(BudgetedQp::dense(Matrix::identity(2), vec![0.0; 2], vec![1.0; 2], -1.0).is_err());
    }

    #[test]
    fn sampling_extremes_and_frequency() {
        let mut rng = rng_from_seed(11);
        assert_eq!(sample(&LinkProbabilities { p: vec![1.0; 5] }, &mut rng), LinkMask::all(5));
        assert_eq!(sample(&LinkProbabilities { p: vec![0.0; 5] }, &mut rng), LinkMask::none(5));
        let draws = 100_000;
        let mask = sample(&LinkProbabilities { p: vec![0.7; draws] }, &mut rng);
        let freq = mask.count() as f64 / draws as f64;
        assert!((0.69..=0.71).contains(&freq), "frequency {freq}");
    }
}
