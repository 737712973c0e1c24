//! State vectors, link masks, and the synchronous consensus updates.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::dot;
use crate::rng::rng_from_seed;
use crate::topology::{Graph, Laplacian};

/// Node states at iteration `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub values: Vec<f64>,
    pub t: usize,
}

impl StateVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values, t: 0 }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Binary link-usage indicators in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkMask {
    pub bits: Vec<bool>,
}

impl LinkMask {
    pub fn all(m: usize) -> Self {
        Self { bits: vec![true; m] }
    }

    pub fn none(m: usize) -> Self {
        Self { bits: vec![false; m] }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        Self { bits: bits.into_iter().map(|b| b != 0).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Total cost of the set links.
    pub fn cost(&self, costs: &[f64]) -> f64 {
        self.bits.iter().zip(costs).filter(|(b, _)| **b).map(|(_, c)| c).sum()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
    }
}

/// Draws `n` i.i.d. standard normal states from a stream seeded by `seed`.
pub fn init_states(n: usize, seed: u64) -> StateVector {
    let mut rng = rng_from_seed(seed);
    StateVector::new((0..n).map(|_| StandardNormal.sample(&mut rng)).collect())
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

/// `x ← (I - δL) x`.
pub fn full_update(x: &StateVector, l: &Laplacian, delta: f64) -> Result<StateVector> {
    check_len(l.dim(), x.len())?;
    let lx = l.apply(&x.values);
    let values = x.values.iter().zip(&lx).map(|(xi, li)| xi - delta * li).collect();
    Ok(StateVector { values, t: x.t + 1 })
}

/// Update over the links set in `mask` only. Every node reads the previous
/// states, and a set link moves both of its endpoints, so the mean is kept.
pub fn masked_update(x: &StateVector, g: &Graph, mask: &LinkMask, delta: f64) -> Result<StateVector> {
    check_len(g.node_count(), x.len())?;
    check_len(g.edge_count(), mask.len())?;
    let mut values = x.values.clone();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if mask.bits[e] {
            let flow = delta * (x.values[u] - x.values[v]);
            values[u] -= flow;
            values[v] += flow;
        }
    }
    Ok(StateVector { values, t: x.t + 1 })
}

/// `xᵀ L x`, the sum of squared differences across edges.
pub fn disagreement(x: &StateVector, l: &Laplacian) -> Result<f64> {
    check_len(l.dim(), x.len())?;
    Ok(dot(&x.values, &l.apply(&x.values)))
}

/// `max(x) - min(x)`; zero for an empty vector.
pub fn spread(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let (lo, hi) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    hi - lo
}

pub fn has_converged(x: &[f64], epsilon: f64) -> bool {
    spread(x) < epsilon
}

/// Splits `x` into its mean and the zero-sum difference component.
pub fn decompose(x: &[f64]) -> (f64, Vec<f64>) {
    let mu = x.iter().sum::<f64>() / x.len() as f64;
    (mu, x.iter().map(|v| v - mu).collect())
}
