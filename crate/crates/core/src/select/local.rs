//! Local link selection. Node `v` predicts each neighbor's next value from
//! the neighbors the two share, minimizes the squared distance between its
//! own next value and those predictions over its incident links under the
//! budget `α Σ_{e∈E_v} c_e`, and the two endpoint probabilities of every edge
//! are averaged before sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{check_alpha, Selection};
use crate::consensus::{LinkMask, StateVector};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qp::{sample, solve, BudgetedQp, LinkProbabilities, SolverOptions};
use crate::topology::Graph;

/// Direction of the shared-neighbor correction in the prediction.
///
/// `Consistent` moves `x_u` toward its shared neighbors exactly as the update
/// rule would; `Reversed` (config value `paper`) pushes it the other way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PredictionSign {
    #[default]
    Consistent,
    Reversed,
}

impl fmt::Display for PredictionSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredictionSign::Consistent => "consistent",
            PredictionSign::Reversed => "paper",
        })
    }
}

impl FromStr for PredictionSign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "consistent" => Ok(PredictionSign::Consistent),
            "paper" => Ok(PredictionSign::Reversed),
            other => Err(format!("unknown prediction sign `{other}` (expected paper|consistent)")),
        }
    }
}

/// Node `v`'s estimate of `x_u` after the next update, using only `x_u` and
/// the states of neighbors shared by `u` and `v`.
pub fn shared_neighbor_prediction(
    g: &Graph,
    x: &StateVector,
    v: usize,
    u: usize,
    delta: f64,
    sign: PredictionSign,
) -> Result<f64> {
    g.neighbors(v)?;
    g.neighbors(u)?;
    if g.edge_index(v, u).is_none() {
        return Err(Error::NotAdjacent(v, u));
    }
    let xu = x.values[u];
    let pull: f64 = g.shared_neighbors(u, v).iter().map(|&w| xu - x.values[w]).sum();
    Ok(match sign {
        PredictionSign::Consistent => xu - delta * pull,
        PredictionSign::Reversed => xu + delta * pull,
    })
}

/// Node `v`'s relaxed problem over its incident edges (in the order of
/// [`Graph::incident_edges`]).
#[derive(Debug, Clone)]
pub struct LocalProblem {
    pub node: usize,
    pub edges: Vec<usize>,
    pub qp: BudgetedQp<Matrix>,
}

/// Builds node `v`'s quadratic. With `a_e = δ(x_v - x_u)` for `e = {v, u}`,
/// `v`'s next value is `x_v - aᵀb`, and with `r_u = x_v - x̃_{v:u}`
///
/// ```text
/// ½ Σ_u (x_v - aᵀb - x̃_{v:u})² = ½ d_v (aᵀb)² - (Σ_u r_u) aᵀb + const
/// ```
///
/// giving `A_v = d_v a aᵀ` and `g_v = -(Σ_u r_u) a`.
pub fn build_local_qp(
    g: &Graph,
    x: &StateVector,
    v: usize,
    delta: f64,
    alpha: f64,
    sign: PredictionSign,
) -> Result<LocalProblem> {
    check_alpha(alpha)?;
    if x.len() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), actual: x.len() });
    }
    let neighbors = g.neighbors(v)?;
    let edges = g.incident_edges(v)?.to_vec();
    let d = neighbors.len();
    let xv = x.values[v];

    let a: Vec<f64> = neighbors.iter().map(|&u| delta * (xv - x.values[u])).collect();
    let mut residual_sum = 0.0;
    for &u in neighbors {
        residual_sum += xv - shared_neighbor_prediction(g, x, v, u, delta, sign)?;
    }

    let mut hessian = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            hessian[(i, j)] = d as f64 * a[i] * a[j];
        }
    }
    let linear = a.iter().map(|ai| -residual_sum * ai).collect();
    let costs: Vec<f64> = edges.iter().map(|&e| g.costs()[e]).collect();
    let budget = alpha * costs.iter().sum::<f64>();
    let qp = BudgetedQp::with_operator(hessian, linear, costs, budget)?;
    Ok(LocalProblem { node: v, edges, qp })
}

/// `½ Σ_u (x_v(t) - x̃_{v:u})²` evaluated directly for `v`'s incident
/// indicators `b` (fractional values allowed).
pub fn local_objective(
    g: &Graph,
    x: &StateVector,
    v: usize,
    delta: f64,
    b: &[f64],
    sign: PredictionSign,
) -> Result<f64> {
    let neighbors = g.neighbors(v)?;
    if b.len() != neighbors.len() {
        return Err(Error::DimensionMismatch { expected: neighbors.len(), actual: b.len() });
    }
    let xv = x.values[v];
    let next_v = xv - delta * neighbors.iter().zip(b).map(|(&u, bi)| bi * (xv - x.values[u])).sum::<f64>();
    let mut total = 0.0;
    for &u in neighbors {
        let predicted = shared_neighbor_prediction(g, x, v, u, delta, sign)?;
        total += (next_v - predicted).powi(2);
    }
    Ok(0.5 * total)
}

/// Averages the two endpoint probabilities of every edge. `per_node[v]` holds
/// `v`'s probabilities in [`Graph::incident_edges`] order.
pub fn merge_probabilities(g: &Graph, per_node: &BTreeMap<usize, Vec<f64>>) -> Result<LinkProbabilities> {
    let m = g.edge_count();
    let mut sum = vec![0.0; m];
    let mut seen = vec![[false; 2]; m];
    for (&v, probs) in per_node {
        let incident = g.incident_edges(v)?;
        if probs.len() != incident.len() {
            return Err(Error::DimensionMismatch { expected: incident.len(), actual: probs.len() });
        }
        for (&e, &p) in incident.iter().zip(probs) {
            let side = usize::from(g.edge(e).1 == v);
            sum[e] += p;
            seen[e][side] = true;
        }
    }
    for (e, flags) in seen.iter().enumerate() {
        if let Some(side) = flags.iter().position(|f| !f) {
            let (u, v) = g.edge(e);
            return Err(Error::MissingEndpoint { edge: e, node: if side == 0 { u } else { v } });
        }
    }
    Ok(LinkProbabilities { p: sum.into_iter().map(|s| (0.5 * s).clamp(0.0, 1.0)).collect() })
}

/// Solves every node's local problem, merges, and samples one mask.
pub fn select_links_local<R: Rng + ?Sized>(
    g: &Graph,
    x: &StateVector,
    delta: f64,
    alpha: f64,
    sign: PredictionSign,
    rng: &mut R,
) -> Result<Selection> {
    let mut per_node = BTreeMap::new();
    let mut converged = true;
    for v in 0..g.node_count() {
        let problem = build_local_qp(g, x, v, delta, alpha, sign)?;
        let sol = solve(&problem.qp, SolverOptions::default());
        converged &= sol.converged;
        per_node.insert(v, sol.probs.p);
    }
    let probs = merge_probabilities(g, &per_node)?;
    let mask = if alpha == 0.0 { LinkMask::none(g.edge_count()) } else { sample(&probs, rng) };
    Ok(Selection { mask, probs, solver_converged: converged })
}
