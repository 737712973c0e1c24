//! Undirected simple graphs with per-edge energy costs, their Laplacians, and
//! generators for the uniform, clustered, star and chain network families.

mod generate;
mod io;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub use generate::{gen_chain, gen_clustered, gen_star, gen_uniform, MAX_GENERATION_ATTEMPTS};
pub use io::{parse_edge_list, read_edge_list, to_edge_list, write_edge_list};

/// Undirected simple graph. Edges are stored in canonical order, sorted by
/// `(min endpoint, max endpoint)`, so edge indices are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    costs: Vec<f64>,
    neighbors: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph with unit edge costs.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_costs(node_count, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn with_costs(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidGraph("graph needs at least one node".into()));
        }
        let mut list: Vec<(usize, usize, f64)> = Vec::new();
        for (u, v, c) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::UnknownNode { node, node_count });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidGraph(format!("edge {{{u},{v}}} has invalid cost {c}")));
            }
            list.push((u.min(v), u.max(v), c));
        }
        list.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        if let Some(w) = list.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidGraph(format!("duplicate edge {{{},{}}}", w[0].0, w[0].1)));
        }

        let mut neighbors = vec![Vec::new(); node_count];
        let mut incident = vec![Vec::new(); node_count];
        for (e, &(u, v, _)) in list.iter().enumerate() {
            neighbors[u].push(v);
            neighbors[v].push(u);
            incident[u].push(e);
            incident[v].push(e);
        }
        for v in 0..node_count {
            let mut pairs: Vec<(usize, usize)> =
                neighbors[v].iter().copied().zip(incident[v].iter().copied()).collect();
            pairs.sort_unstable();
            neighbors[v] = pairs.iter().map(|p| p.0).collect();
            incident[v] = pairs.iter().map(|p| p.1).collect();
        }

        Ok(Self {
            node_count,
            edges: list.iter().map(|&(u, v, _)| (u, v)).collect(),
            costs: list.iter().map(|&(_, _, c)| c).collect(),
            neighbors,
            incident,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn total_cost(&self) -> f64 {
        self.costs.iter().sum()
    }

    /// Index of edge `{u, v}` in canonical order, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count {
            Ok(())
        } else {
            Err(Error::UnknownNode { node: v, node_count: self.node_count })
        }
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check_node(v)?;
        Ok(&self.neighbors[v])
    }

    /// Edge indices incident to `v`, aligned with [`Graph::neighbors`].
    pub fn incident_edges(&self, v: usize) -> Result<&[usize]> {
        self.check_node(v)?;
        Ok(&self.incident[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edge_count() as f64 / self.node_count as f64
    }

    /// Sorted intersection of the neighborhoods of `u` and `v`.
    pub fn shared_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.neighbors[u], &self.neighbors[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.neighbors[v] {
                if !seen[u] {
                    seen[u] = true;
                    visited += 1;
                    queue.push_back(u);
                }
            }
        }
        visited == self.node_count
    }
}

/// Dense graph Laplacian `L = D - A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian(Matrix);

impl Laplacian {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.0.matvec(x)
    }

    /// `xᵀ L x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        crate::matrix::dot(x, &self.apply(x))
    }
}

pub fn build_laplacian(g: &Graph) -> Laplacian {
    let n = g.node_count();
    let mut l = Matrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    Laplacian(l)
}

/// The four network families used in the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Configuration-model graph with `n` nodes and average degree `d`.
    Uniform { n: usize, d: usize },
    /// 100 nodes in four clusters, each with two degree-50 hubs.
    Clustered,
    Star { n: usize },
    Chain { n: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Uniform { .. } => "uniform",
            Family::Clustered => "clustered",
            Family::Star { .. } => "star",
            Family::Chain { .. } => "chain",
        }
    }

    /// Node count of generated graphs.
    pub fn node_count(&self) -> usize {
        match *self {
            Family::Uniform { n, .. } | Family::Star { n } | Family::Chain { n } => n,
            Family::Clustered => generate::CLUSTERED_NODES,
        }
    }

    /// Degree parameter, where the family has one.
    pub fn degree_param(&self) -> Option<usize> {
        match *self {
            Family::Uniform { d, .. } => Some(d),
            _ => None,
        }
    }

    /// Generates a graph; star and chain ignore the seed.
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            Family::Uniform { n, d } => gen_uniform(n, d, seed),
            Family::Clustered => gen_clustered(seed),
            Family::Star { n } => gen_star(n),
            Family::Chain { n } => gen_chain(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
