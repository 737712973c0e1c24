use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{derived_rng, stream};

/// Retry bound shared by the randomized generators.
pub const MAX_GENERATION_ATTEMPTS: usize = 200;

pub(super) const CLUSTERED_NODES: usize = 100;
const CLUSTERS: usize = 4;
const CLUSTER_SIZE: usize = 25;
const HUBS_PER_CLUSTER: usize = 2;
const HUB_INTER_LINKS: usize = 26;
const NON_HUB_MEAN_DEGREE: usize = 5;

/// Configuration-model graph with average degree close to `d`.
///
/// Each node receives `d` stubs (one extra stub goes to a random node when
/// `n·d` is odd); stubs are paired uniformly at random, self-loops and
/// parallel edges are dropped. A draw is rejected if it is disconnected or
/// its mean degree falls outside `d ± 10%`, and the next attempt uses a
/// fresh seed derived from `(seed, attempt)`.
pub fn gen_uniform(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("uniform graph needs n >= 2, got {n}")));
    }
    if d < 1 || d >= n {
        return Err(Error::InvalidConfig(format!("uniform graph needs 1 <= d < n, got d={d}, n={n}")));
    }
    let mut last_reason = String::new();
    for attempt in 0..MAX_GENERATION_ATTEMPTS {
        let mut rng = derived_rng(seed, stream::TOPOLOGY, attempt as u64);
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        if stubs.len() % 2 == 1 {
            stubs.push(rng.random_range(0..n));
        }
        stubs.shuffle(&mut rng);
        let edges: BTreeSet<(usize, usize)> = stubs
            .chunks_exact(2)
            .filter(|p| p[0] != p[1])
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        let g = Graph::new(n, edges)?;
        let mean = g.mean_degree();
        if (mean - d as f64).abs() > 0.1 * d as f64 {
            last_reason = format!("mean degree {mean:.3} outside target {d} ± 10%");
            continue;
        }
        if !g.is_connected() {
            last_reason = "disconnected".into();
            continue;
        }
        return Ok(g);
    }
    Err(Error::GenerationFailed { attempts: MAX_GENERATION_ATTEMPTS, reason: last_reason })
}

/// Four clusters of 25 nodes. Two hubs per cluster link to every peer in
/// their cluster (24 links) and to 26 nodes drawn uniformly from the other
/// clusters; the remaining nodes get extra random intra-cluster links until
/// their mean degree reaches 5.
pub fn gen_clustered(seed: u64) -> Result<Graph> {
    let mut last_reason = String::new();
    for attempt in 0..MAX_GENERATION_ATTEMPTS {
        match clustered_attempt(seed, attempt as u64) {
            Ok(g) if g.is_connected() => return Ok(g),
            Ok(_) => last_reason = "disconnected".into(),
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::GenerationFailed { attempts: MAX_GENERATION_ATTEMPTS, reason: last_reason })
}

fn clustered_attempt(seed: u64, attempt: u64) -> std::result::Result<Graph, String> {
    let mut rng = derived_rng(seed, stream::TOPOLOGY, attempt);
    let cluster_of = |v: usize| v / CLUSTER_SIZE;
    let is_hub = |v: usize| v % CLUSTER_SIZE < HUBS_PER_CLUSTER;
    let hubs: Vec<usize> = (0..CLUSTERS)
        .flat_map(|c| (0..HUBS_PER_CLUSTER).map(move |h| c * CLUSTER_SIZE + h))
        .collect();

    let mut edges = BTreeSet::new();
    let mut degree = vec![0usize; CLUSTERED_NODES];
    let mut inter = vec![0usize; CLUSTERED_NODES];
    let add = |u: usize, v: usize, edges: &mut BTreeSet<(usize, usize)>, degree: &mut [usize]| {
        degree[u] += 1;
        degree[v] += 1;
        edges.insert((u.min(v), u.max(v)));
    };

    for &h in &hubs {
        let base = cluster_of(h) * CLUSTER_SIZE;
        for v in base..base + CLUSTER_SIZE {
            if v != h && !edges.contains(&(h.min(v), h.max(v))) {
                add(h, v, &mut edges, &mut degree);
            }
        }
    }

    for &h in &hubs {
        let needed = HUB_INTER_LINKS.saturating_sub(inter[h]);
        let mut candidates: Vec<usize> = (0..CLUSTERED_NODES)
            .filter(|&v| cluster_of(v) != cluster_of(h))
            .filter(|&v| !edges.contains(&(h.min(v), h.max(v))))
            .filter(|&v| !is_hub(v) || inter[v] < HUB_INTER_LINKS)
            .collect();
        if candidates.len() < needed {
            return Err(format!("hub {h} cannot find {needed} inter-cluster peers"));
        }
        candidates.shuffle(&mut rng);
        for &v in &candidates[..needed] {
            add(h, v, &mut edges, &mut degree);
            inter[h] += 1;
            inter[v] += 1;
        }
    }

    let target: usize = NON_HUB_MEAN_DEGREE * (CLUSTERED_NODES - hubs.len());
    let mut non_hub_sum: usize = (0..CLUSTERED_NODES).filter(|&v| !is_hub(v)).map(|v| degree[v]).sum();
    let mut tries = 0;
    while non_hub_sum < target {
        tries += 1;
        if tries > 100_000 {
            return Err("could not place intra-cluster links".into());
        }
        let c = rng.random_range(0..CLUSTERS);
        let u = c * CLUSTER_SIZE + rng.random_range(HUBS_PER_CLUSTER..CLUSTER_SIZE);
        let v = c * CLUSTER_SIZE + rng.random_range(HUBS_PER_CLUSTER..CLUSTER_SIZE);
        if u == v || edges.contains(&(u.min(v), u.max(v))) {
            continue;
        }
        add(u, v, &mut edges, &mut degree);
        non_hub_sum += 2;
    }

    Graph::new(CLUSTERED_NODES, edges).map_err(|e| e.to_string())
}

pub fn gen_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("star needs n >= 2, got {n}")));
    }
    Graph::new(n, (1..n).map(|v| (0, v)))
}

pub fn gen_chain(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("chain needs n >= 2, got {n}")));
    }
    Graph::new(n, (0..n - 1).map(|v| (v, v + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_hundred_nodes_degree_five() {
        let g = gen_uniform(100, 5, 7).unwrap();
        assert!(g.is_connected());
        assert!((225..=275).contains(&g.edge_count()), "m = {}", g.edge_count());
    }

    #[test]
    fn uniform_two_nodes_is_single_edge() {
        let g = gen_uniform(2, 1, 3).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn uniform_is_deterministic() {
        assert_eq!(gen_uniform(100, 5, 7).unwrap(), gen_uniform(100, 5, 7).unwrap());
        assert_ne!(gen_uniform(100, 5, 7).unwrap(), gen_uniform(100, 5, 8).unwrap());
    }

    #[test]
    fn uniform_rejects_bad_parameters() {
        assert!(gen_uniform(1, 1, 0).is_err());
        assert!(gen_uniform(10, 10, 0).is_err());
        assert!(gen_uniform(10, 0, 0).is_err());
    }

    #[test]
    fn uniform_degree_one_on_many_nodes_fails_to_connect() {
        assert!(matches!(gen_uniform(50, 1, 0), Err(Error::GenerationFailed { .. })));
    }

    #[test]
    fn clustered_structure() {
        for seed in 0..5 {
            let g = gen_clustered(seed).unwrap();
            assert!(g.is_connected());
            let degrees = g.degrees();
            let hubs: Vec<usize> = (0..100).filter(|&v| degrees[v] >= 50).collect();
            assert_eq!(hubs.len(), 8, "seed {seed}");
            let non_hub: Vec<usize> = (0..100).filter(|&v| degrees[v] < 50).map(|v| degrees[v]).collect();
            let mean = non_hub.iter().sum::<usize>() as f64 / non_hub.len() as f64;
            assert!((4.0..=8.0).contains(&mean), "non-hub mean degree {mean}");
            for h in hubs {
                let intra = g.neighbors(h).unwrap().iter().filter(|&&u| u / 25 == h / 25).count();
                assert_eq!(intra, 24);
                assert_eq!(degrees[h], 50);
            }
        }
        assert_eq!(gen_clustered(3).unwrap(), gen_clustered(3).unwrap());
    }

    #[test]
    fn star_and_chain_shapes() {
        assert_eq!(gen_star(4).unwrap().edges(), &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(gen_star(50).unwrap().edge_count(), 49);
        let chain = gen_chain(10).unwrap();
        assert_eq!(chain.edge_count(), 9);
        assert_eq!(chain.degrees().into_iter().max(), Some(2));
        assert!(gen_star(1).is_err());
        assert!(gen_chain(0).is_err());
    }
}
