//! Global link selection. With `U` the node-by-edge matrix of signed state
//! differences, the masked update is `x - δUb` and the next disagreement is
//!
//! ```text
//! Q(b) = (x - δUb)ᵀ L (x - δUb) = δ² bᵀ(UᵀLU)b - 2δ (UᵀLx)ᵀb + xᵀLx
//! ```
//!
//! so the relaxed problem is a budgeted QP with `A = δ²UᵀLU`, `g = -δUᵀLx`.
//! `A` is never materialized during simulation: it is applied through `U`
//! and a sparse Laplacian product in O(m).

use rand::Rng;

use super::{check_alpha, Selection};
use crate::consensus::StateVector;
use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::qp::{sample, solve, BudgetedQp, SolverOptions, SymmetricOperator};
use crate::topology::Graph;

/// Node-by-edge difference matrix. For edge `e = {u, v}` with `u < v`,
/// `U(u, e) = x_u - x_v` and `U(v, e) = x_v - x_u`; all other entries vanish.
#[derive(Debug, Clone)]
pub struct DifferenceMatrix {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    diffs: Vec<f64>,
}

impl DifferenceMatrix {
    pub fn rows(&self) -> usize {
        self.node_count
    }

    pub fn cols(&self) -> usize {
        self.edges.len()
    }

    /// `x_u - x_v` for canonical edge `(u, v)`.
    pub fn edge_difference(&self, e: usize) -> f64 {
        self.diffs[e]
    }

    /// `U b`.
    pub fn apply(&self, b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.node_count];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let w = self.diffs[e] * b[e];
            out[u] += w;
            out[v] -= w;
        }
        out
    }

    /// `Uᵀ y`.
    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        self.edges.iter().zip(&self.diffs).map(|(&(u, v), d)| d * (y[u] - y[v])).collect()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.node_count, self.edges.len());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            m[(u, e)] = self.diffs[e];
            m[(v, e)] = -self.diffs[e];
        }
        m
    }
}

pub fn build_difference_matrix(g: &Graph, x: &StateVector) -> Result<DifferenceMatrix> {
    if x.len() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), actual: x.len() });
    }
    Ok(DifferenceMatrix {
        node_count: g.node_count(),
        edges: g.edges().to_vec(),
        diffs: g.edges().iter().map(|&(u, v)| x.values[u] - x.values[v]).collect(),
    })
}

/// Sparse `L y` over an edge list.
fn laplacian_apply(node_count: usize, edges: &[(usize, usize)], y: &[f64], out: &mut [f64]) {
    debug_assert_eq!(out.len(), node_count);
    out.iter_mut().for_each(|o| *o = 0.0);
    for &(u, v) in edges {
        let d = y[u] - y[v];
        out[u] += d;
        out[v] -= d;
    }
}

/// `δ² UᵀLU` as an operator, symmetric by construction.
#[derive(Debug, Clone)]
pub struct DifferenceHessian {
    diff: DifferenceMatrix,
    scale: f64,
}

impl DifferenceHessian {
    pub fn difference_matrix(&self) -> &DifferenceMatrix {
        &self.diff
    }
}

impl SymmetricOperator for DifferenceHessian {
    fn dim(&self) -> usize {
        self.diff.cols()
    }

    fn apply_into(&self, b: &[f64], out: &mut [f64]) {
        let ub = self.diff.apply(b);
        let mut lub = vec![0.0; self.diff.node_count];
        laplacian_apply(self.diff.node_count, &self.diff.edges, &ub, &mut lub);
        for (e, &(u, v)) in self.diff.edges.iter().enumerate() {
            out[e] = self.scale * self.diff.diffs[e] * (lub[u] - lub[v]);
        }
    }
}

pub type GlobalQp = BudgetedQp<DifferenceHessian>;

/// Relaxed global problem with budget `C = α Σ c_e`.
pub fn build_global_qp(g: &Graph, x: &StateVector, delta: f64, alpha: f64) -> Result<GlobalQp> {
    check_alpha(alpha)?;
    let diff = build_difference_matrix(g, x)?;
    let mut lx = vec![0.0; g.node_count()];
    laplacian_apply(g.node_count(), g.edges(), &x.values, &mut lx);
    let linear = diff.apply_transpose(&lx).into_iter().map(|f| -delta * f).collect();
    let budget = alpha * g.total_cost();
    BudgetedQp::with_operator(DifferenceHessian { diff, scale: delta * delta }, linear, g.costs().to_vec(), budget)
}

/// `Q(b) = x'ᵀLx'` with `x' = x - δUb`, constant included. Accepts fractional `b`.
pub fn objective_value(g: &Graph, x: &StateVector, delta: f64, b: &[f64]) -> Result<f64> {
    if b.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), actual: b.len() });
    }
    let diff = build_difference_matrix(g, x)?;
    let ub = diff.apply(b);
    let next: Vec<f64> = x.values.iter().zip(&ub).map(|(xi, ui)| xi - delta * ui).collect();
    let mut l_next = vec![0.0; next.len()];
    laplacian_apply(g.node_count(), g.edges(), &next, &mut l_next);
    Ok(dot(&next, &l_next))
}

pub fn select_links_global<R: Rng + ?Sized>(
    g: &Graph,
    x: &StateVector,
    delta: f64,
    alpha: f64,
    rng: &mut R,
) -> Result<Selection> {
    select_links_global_with(g, x, delta, alpha, SolverOptions::default(), rng)
}

pub fn select_links_global_with<R: Rng + ?Sized>(
    g: &Graph,
    x: &StateVector,
    delta: f64,
    alpha: f64,
    opts: SolverOptions,
    rng: &mut R,
) -> Result<Selection> {
    let qp = build_global_qp(g, x, delta, alpha)?;
    let sol = solve(&qp, opts);
    let mask = sample(&sol.probs, rng);
    Ok(Selection { mask, probs: sol.probs, solver_converged: sol.converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consensus::{disagreement, masked_update, LinkMask};
    use crate::rng::rng_from_seed;
    use crate::topology::build_laplacian;

    #[test]
    fn difference_matrix_examples() {
        let chain = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let u = build_difference_matrix(&chain, &StateVector::new(vec![1.0, 0.0, -1.0])).unwrap();
        assert_eq!(u.to_dense(), Matrix::from_rows(&[vec![1.0, 0.0], vec![-1.0, 1.0], vec![0.0, -1.0]]));
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        let u = build_difference_matrix(&edge, &StateVector::new(vec![1.0, 0.0])).unwrap();
        assert_eq!(u.to_dense(), Matrix::from_rows(&[vec![1.0], vec![-1.0]]));
        let flat = build_difference_matrix(&chain, &StateVector::new(vec![2.0; 3])).unwrap();
        assert!(flat.to_dense().as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_edge_problem() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        let x = StateVector::new(vec![1.0, 0.0]);
        let qp = build_global_qp(&edge, &x, 0.5, 1.0).unwrap();
        assert!((qp.hessian().to_dense()[(0, 0)] - 1.0).abs() < 1e-15);
        assert!((qp.linear()[0] + 1.0).abs() < 1e-15);
        let sol = solve(&qp, SolverOptions::default());
        assert!((sol.probs.p[0] - 1.0).abs() < 1e-9);
        assert_eq!(objective_value(&edge, &x, 0.5, &[1.0]).unwrap(), 0.0);
        assert_eq!(objective_value(&edge, &x, 0.5, &[0.0]).unwrap(), 1.0);
    }

    #[test]
    fn constant_states_give_zero_problem() {
        let g = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let x = StateVector::new(vec![0.3; 3]);
        let qp = build_global_qp(&g, &x, 0.3, 0.5).unwrap();
        assert!(qp.hessian().to_dense().as_slice().iter().all(|&v| v == 0.0));
        assert!(qp.linear().iter().all(|&v| v == 0.0));
        let sel = select_links_global(&g, &x, 0.3, 0.5, &mut rng_from_seed(1)).unwrap();
        assert_eq!(sel.probs.p, vec![0.0; 3]);
        assert_eq!(masked_update(&x, &g, &sel.mask, 0.3).unwrap().values, x.values);
    }

    #[test]
    fn zero_alpha_selects_nothing() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let x = StateVector::new(vec![1.0, 0.0, -1.0]);
        let sel = select_links_global(&g, &x, 0.5, 0.0, &mut rng_from_seed(1)).unwrap();
        assert_eq!(sel.mask, LinkMask::none(2));
    }

    #[test]
    fn rejects_alpha_outside_unit_interval() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let x = StateVector::new(vec![1.0, 0.0]);
        assert!(build_global_qp(&g, &x, 0.5, 1.3).is_err());
        assert!(build_global_qp(&g, &x, 0.5, -0.1).is_err());
    }

    #[test]
    fn chain_prefers_the_edge_with_the_gap() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let x = StateVector::new(vec![1.0, 0.0, 0.0]);
        // λ2 = 1, λ3 = 3 for the 3-chain.
        let delta = 0.5;
        let sel = select_links_global(&g, &x, delta, 0.5, &mut rng_from_seed(4)).unwrap();
        assert!(sel.probs.p[0] > sel.probs.p[1], "{:?}", sel.probs.p);
    }

    #[test]
    fn objective_matches_masked_update() {
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let l = build_laplacian(&g);
        let x = StateVector::new(vec![0.4, -1.2, 2.0, 0.1]);
        for bits in 0..16u8 {
            let mask = LinkMask::from_bits((0..4).map(|k| (bits >> k) & 1));
            let via_update = disagreement(&masked_update(&x, &g, &mask, 0.3).unwrap(), &l).unwrap();
            let via_q = objective_value(&g, &x, 0.3, &mask.as_f64()).unwrap();
            assert!((via_update - via_q).abs() < 1e-12);
        }
    }
}
