//! Brute-force oracles shared by the integration tests. None of these call
//! into the solver, projection or selection code they check.
#![allow(dead_code)]

use active_consensus::topology::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

/// Solves `M z = r` by Gauss-Jordan elimination with partial pivoting.
/// Rank-deficient but consistent systems get their free variables set to 0;
/// inconsistent systems return `None`.
pub fn solve_linear(mut m: Vec<Vec<f64>>, mut r: Vec<f64>) -> Option<Vec<f64>> {
    let n = r.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let cols = m[0].len();
    let scale = m.iter().flatten().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let tol = 1e-11 * scale;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == n {
            break;
        }
        let best = (row..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        if m[best][col].abs() <= tol {
            continue;
        }
        m.swap(row, best);
        r.swap(row, best);
        let p = m[row][col];
        for k in 0..cols {
            m[row][k] /= p;
        }
        r[row] /= p;
        for i in 0..n {
            if i != row && m[i][col] != 0.0 {
                let f = m[i][col];
                for k in 0..cols {
                    m[i][k] -= f * m[row][k];
                }
                r[i] -= f * r[row];
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rscale = r.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    if r[row..].iter().any(|v| v.abs() > 1e-9 * rscale) {
        return None;
    }
    let mut z = vec![0.0; cols];
    for (i, &col) in pivots.iter().enumerate() {
        z[col] = r[i];
    }
    Some(z)
}

pub fn quadratic(a: &[Vec<f64>], g: &[f64], b: &[f64]) -> f64 {
    let mut q = 0.0;
    for i in 0..b.len() {
        q += g[i] * b[i];
        for j in 0..b.len() {
            q += 0.5 * b[i] * a[i][j] * b[j];
        }
    }
    q
}

/// Minimum of `½bᵀAb + gᵀb` over `[0,1]^m ∩ {cᵀb ≤ C}` by enumerating every
/// assignment of coordinates to {lower bound, upper bound, free} and the
/// budget to {slack, tight}, solving the stationarity system on each face.
pub fn active_set_min(a: &[Vec<f64>], g: &[f64], c: &[f64], budget: f64) -> (Vec<f64>, f64) {
    let m = g.len();
    let mut best = (vec![0.0; m], 0.0);
    let states = 3usize.pow(m as u32);
    for code in 0..states {
        let mut status = vec![0u8; m];
        let mut k = code;
        for s in status.iter_mut() {
            *s = (k % 3) as u8;
            k /= 3;
        }
        let free: Vec<usize> = (0..m).filter(|&i| status[i] == 2).collect();
        let fixed_value = |i: usize| if status[i] == 1 { 1.0 } else { 0.0 };
        for tight in [false, true] {
            let dim = free.len() + usize::from(tight);
            let mut mat = vec![vec![0.0; dim]; dim];
            let mut rhs = vec![0.0; dim];
            for (r, &i) in free.iter().enumerate() {
                for (s, &j) in free.iter().enumerate() {
                    mat[r][s] = a[i][j];
                }
                rhs[r] = -g[i] - (0..m).filter(|&j| status[j] != 2).map(|j| a[i][j] * fixed_value(j)).sum::<f64>();
                if tight {
                    mat[r][free.len()] = c[i];
                }
            }
            if tight {
                for (s, &j) in free.iter().enumerate() {
                    mat[free.len()][s] = c[j];
                }
                rhs[free.len()] = budget - (0..m).filter(|&j| status[j] != 2).map(|j| c[j] * fixed_value(j)).sum::<f64>();
            }
            let Some(z) = solve_linear(mat, rhs) else { continue };
            let mut b: Vec<f64> = (0..m).map(fixed_value).collect();
            for (r, &i) in free.iter().enumerate() {
                b[i] = z[r];
            }
            let spent: f64 = b.iter().zip(c).map(|(x, y)| x * y).sum();
            if b.iter().any(|&v| !(-1e-9..=1.0 + 1e-9).contains(&v)) || spent > budget + 1e-9 {
                continue;
            }
            let q = quadratic(a, g, &b);
            if q < best.1 {
                best = (b, q);
            }
        }
    }
    best
}

/// Minimum of `f` over binary vectors with `cᵀb ≤ C`.
pub fn exhaustive_binary_min(m: usize, c: &[f64], budget: f64, f: impl Fn(&[f64]) -> f64) -> (Vec<f64>, f64) {
    let mut best = (vec![0.0; m], f(&vec![0.0; m]));
    for code in 0u32..(1 << m) {
        let b: Vec<f64> = (0..m).map(|i| f64::from((code >> i) & 1)).collect();
        let spent: f64 = b.iter().zip(c).map(|(x, y)| x * y).sum();
        if spent > budget + 1e-12 {
            continue;
        }
        let q = f(&b);
        if q < best.1 {
            best = (b, q);
        }
    }
    best
}

/// `x'ᵀLx'` for `x'_v = x_v - δ Σ_{used {v,u}} (x_v - x_u)`, summed edge by
/// edge over the full graph.
pub fn next_disagreement(g: &Graph, x: &[f64], delta: f64, b: &[f64]) -> f64 {
    let mut next = x.to_vec();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let flow = delta * b[e] * (x[u] - x[v]);
        next[u] -= flow;
        next[v] += flow;
    }
    g.edges().iter().map(|&(u, v)| (next[u] - next[v]).powi(2)).sum()
}

pub fn random_psd<R: Rng>(m: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let k = rng.random_range(1..=m);
    let rows: Vec<Vec<f64>> = (0..k).map(|_| (0..m).map(|_| rng.sample(StandardNormal)).collect()).collect();
    (0..m)
        .map(|i| (0..m).map(|j| rows.iter().map(|r: &Vec<f64>| r[i] * r[j]).sum()).collect())
        .collect()
}

pub fn normal_vec<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Random spanning tree plus `extra` random chords.
pub fn random_connected_graph<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push((order[i].min(parent), order[i].max(parent)));
    }
    let mut candidates: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|e| !edges.contains(e)).collect();
    candidates.shuffle(rng);
    edges.extend(candidates.into_iter().take(extra));
    Graph::new(n, edges).expect("valid graph")
}

/// Dense Laplacian built straight from the edge list.
pub fn dense_laplacian(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut l = vec![vec![0.0; n]; n];
    for &(u, v) in g.edges() {
        l[u][u] += 1.0;
        l[v][v] += 1.0;
        l[u][v] -= 1.0;
        l[v][u] -= 1.0;
    }
    l
}
