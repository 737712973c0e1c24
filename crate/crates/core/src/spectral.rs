//! Symmetric eigendecomposition of Laplacians and the step-size quantities
//! derived from it: the optimal step `2 / (λ2 + λn)` and the contraction
//! factor of `W = I - δL` on the disagreement subspace.

use log::warn;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::topology::Laplacian;

const SYMMETRY_TOL: f64 = 1e-9;
const OFF_DIAGONAL_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;
/// Below this the algebraic connectivity is treated as zero.
pub const CONNECTIVITY_TOL: f64 = 1e-9;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }

    /// Second-smallest eigenvalue; `None` for 1×1 input.
    pub fn lambda2(&self) -> Option<f64> {
        self.values.get(1).copied()
    }

    pub fn lambda_max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Sweeps over every off-diagonal pair, zeroing each with a plane rotation,
/// until the off-diagonal Frobenius norm drops below `1e-10 · max(1, ‖A‖_F)`
/// or 100 sweeps have run. Rotations are accumulated into the eigenvector
/// matrix, then the pairs are sorted by eigenvalue.
pub fn sym_eigen(a: &Matrix) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::NotSymmetric(f64::INFINITY));
    }
    let asym = a.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let n = a.rows();
    let mut m = a.clone();
    m.symmetrize();
    let mut v = Matrix::identity(n);

    let scale = m.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let threshold = OFF_DIAGONAL_TOL * scale;
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > threshold {
        warn!("jacobi did not reach tolerance after {MAX_SWEEPS} sweeps");
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(Spectrum { values, vectors })
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)] * m[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Applies the rotation in the (p, q) plane that annihilates `m[p][q]`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = m.rows();

    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

pub fn laplacian_spectrum(l: &Laplacian) -> Result<Spectrum> {
    sym_eigen(l.matrix())
}

/// Step size minimizing the contraction factor: `2 / (λ2 + λn)`.
pub fn optimal_step(lambda2: f64, lambda_max: f64) -> Result<f64> {
    if !(lambda2 > CONNECTIVITY_TOL) {
        return Err(Error::Disconnected { lambda2 });
    }
    if lambda_max < lambda2 {
        return Err(Error::InvalidConfig(format!("λn ({lambda_max}) < λ2 ({lambda2})")));
    }
    Ok(2.0 / (lambda2 + lambda_max))
}

/// `max(|1 - δλ2|, |1 - δλn|)`.
pub fn contraction_from_extremes(lambda2: f64, lambda_max: f64, delta: f64) -> f64 {
    (1.0 - delta * lambda2).abs().max((1.0 - delta * lambda_max).abs())
}

/// Operator norm of `W(L, δ)` restricted to the disagreement subspace.
/// A single node has an empty disagreement subspace and norm 0.
pub fn contraction_norm(l: &Laplacian, delta: f64) -> Result<f64> {
    let spec = laplacian_spectrum(l)?;
    Ok(match spec.lambda2() {
        Some(l2) => contraction_from_extremes(l2, spec.lambda_max(), delta),
        None => 0.0,
    })
}

/// Optimal step and the contraction factor it achieves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub lambda2: f64,
    pub lambda_max: f64,
    pub step: f64,
    pub contraction: f64,
}

pub fn step_info(l: &Laplacian) -> Result<StepInfo> {
    let spec = laplacian_spectrum(l)?;
    let lambda2 = spec.lambda2().ok_or(Error::Disconnected { lambda2: 0.0 })?;
    let lambda_max = spec.lambda_max();
    let step = optimal_step(lambda2, lambda_max)?;
    Ok(StepInfo { lambda2, lambda_max, step, contraction: contraction_from_extremes(lambda2, lambda_max, step) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_laplacian, gen_star, Graph};

    fn assert_values(actual: &[f64], expected: &[f64]) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < 1e-8, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn complete_graph_on_three_nodes() {
        let g = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let spec = laplacian_spectrum(&build_laplacian(&g)).unwrap();
        assert_values(&spec.values, &[0.0, 3.0, 3.0]);
    }

    #[test]
    fn star_spectrum() {
        let spec = laplacian_spectrum(&build_laplacian(&gen_star(4).unwrap())).unwrap();
        assert_values(&spec.values, &[0.0, 1.0, 1.0, 4.0]);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let spec = laplacian_spectrum(&build_laplacian(&g)).unwrap();
        assert_values(&spec.values, &[0.0, 2.0]);
        let e1 = spec.vector(0);
        assert!((e1[0] - e1[1]).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let a = Matrix::from_rows(&[vec![1.0, 0.0], vec![1e-6, 1.0]]);
        assert!(matches!(sym_eigen(&a), Err(Error::NotSymmetric(_))));
        assert!(sym_eigen(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn optimal_step_values() {
        assert!((optimal_step(2.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((optimal_step(3.0, 3.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((optimal_step(1.0, 50.0).unwrap() - 2.0 / 51.0).abs() < 1e-15);
        assert!(matches!(optimal_step(0.0, 2.0), Err(Error::Disconnected { .. })));
        assert!(matches!(optimal_step(-1e-3, 2.0), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn contraction_examples() {
        let k3 = build_laplacian(&Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap());
        assert!((contraction_norm(&k3, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(contraction_norm(&k3, 1.0 / 3.0).unwrap() < 1e-12);
        let edge = build_laplacian(&Graph::new(2, [(0, 1)]).unwrap());
        assert!(contraction_norm(&edge, 0.5).unwrap() < 1e-12);
    }

    #[test]
    fn disconnected_graph_has_no_step() {
        let l = build_laplacian(&Graph::new(4, [(0, 1), (2, 3)]).unwrap());
        assert!(matches!(step_info(&l), Err(Error::Disconnected { .. })));
    }
}
