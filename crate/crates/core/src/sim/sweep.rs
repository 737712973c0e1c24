use rayon::prelude::*;

use super::{ratios, run_on_graph, RunResult, Scheme, SimConfig};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, stream};
use crate::stats::{mean_sd, MeanSd};

/// One grid dimension: a config key and the values it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub key: String,
    pub values: Vec<String>,
}

impl GridAxis {
    /// Parses `key=v1,v2,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let (key, values) = text
            .split_once('=')
            .ok_or_else(|| Error::InvalidConfig(format!("grid axis `{text}` must look like key=v1,v2")))?;
        let values: Vec<String> = values.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
        if values.is_empty() {
            return Err(Error::InvalidConfig(format!("grid axis `{key}` has no values")));
        }
        Ok(Self { key: key.trim().to_string(), values })
    }
}

/// Cartesian product of the axes applied on top of `base`; the first axis
/// varies slowest. Every point is validated.
pub fn expand_grid(grid: &[GridAxis], base: &SimConfig) -> Result<Vec<SimConfig>> {
    let mut points = vec![base.clone()];
    for axis in grid {
        let mut next = Vec::with_capacity(points.len() * axis.values.len());
        for point in &points {
            for value in &axis.values {
                let mut c = point.clone();
                c.set(&axis.key, value).map_err(Error::InvalidConfig)?;
                next.push(c);
            }
        }
        points = next;
    }
    for p in &points {
        p.validate()?;
    }
    Ok(points)
}

/// Run outcome for one replicate of one grid point. Traces are empty unless
/// produced by [`sweep_with_traces`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateResult {
    pub replicate: usize,
    pub config: SimConfig,
    pub node_count: usize,
    pub selective: RunResult,
    /// Present for global/local points.
    pub baseline: Option<RunResult>,
    pub cost_ratio: Option<f64>,
    pub time_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub iterations: MeanSd,
    pub cost_attempted: MeanSd,
    pub cost_survived: MeanSd,
    pub converged_fraction: f64,
    pub cost_ratio: MeanSd,
    pub time_ratio: MeanSd,
    pub baseline_iterations: MeanSd,
    pub baseline_cost: MeanSd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub config: SimConfig,
    pub replicates: Vec<ReplicateResult>,
    pub aggregate: Aggregate,
}

/// Config for replicate `i`: replicate 0 keeps the configured seeds, later
/// replicates derive both the topology and master seeds from `(seed, i)`.
pub fn replicate_config(config: &SimConfig, i: usize) -> SimConfig {
    let mut c = config.clone();
    if i > 0 {
        c.seed = derive_seed(config.seed, stream::REPLICATE, i as u64);
        c.topology_seed = derive_seed(config.topology_seed, stream::REPLICATE, i as u64);
    }
    c
}

fn run_replicate(point: &SimConfig, i: usize, keep_traces: bool) -> Result<ReplicateResult> {
    let config = replicate_config(point, i);
    let graph = config.build_graph()?;
    let mut selective = run_on_graph(&config, &graph)?;
    if !keep_traces {
        selective.trace.clear();
    }
    let (baseline, cost_ratio, time_ratio) = if config.scheme == Scheme::Baseline {
        let (c, t) = ratios(&selective, &selective);
        (None, c, t)
    } else {
        let mut base = run_on_graph(&SimConfig { scheme: Scheme::Baseline, ..config.clone() }, &graph)?;
        if !keep_traces {
            base.trace.clear();
        }
        let (c, t) = ratios(&selective, &base);
        (Some(base), c, t)
    };
    Ok(ReplicateResult {
        replicate: i,
        node_count: graph.node_count(),
        config,
        selective,
        baseline,
        cost_ratio,
        time_ratio,
    })
}

fn aggregate(reps: &[ReplicateResult]) -> Aggregate {
    let collect = |f: &dyn Fn(&ReplicateResult) -> Option<f64>| -> MeanSd {
        mean_sd(&reps.iter().filter_map(f).collect::<Vec<_>>())
    };
    Aggregate {
        iterations: collect(&|r| Some(r.selective.iterations as f64)),
        cost_attempted: collect(&|r| Some(r.selective.total_cost_attempted)),
        cost_survived: collect(&|r| Some(r.selective.total_cost_survived)),
        converged_fraction: reps.iter().filter(|r| r.selective.converged).count() as f64 / reps.len() as f64,
        cost_ratio: collect(&|r| r.cost_ratio),
        time_ratio: collect(&|r| r.time_ratio),
        baseline_iterations: collect(&|r| {
            Some(r.baseline.as_ref().unwrap_or(&r.selective).iterations as f64)
        }),
        baseline_cost: collect(&|r| Some(r.baseline.as_ref().unwrap_or(&r.selective).total_cost_attempted)),
    }
}

/// Runs `replicates` replicates of every grid point on up to `jobs` threads.
/// Results are identical to sequential execution: every replicate is seeded
/// from its own index and results are collected in grid order.
pub fn sweep(grid: &[GridAxis], base: &SimConfig, jobs: usize) -> Result<Vec<SweepPoint>> {
    sweep_impl(grid, base, jobs, false)
}

/// [`sweep`] keeping per-iteration traces of every run.
pub fn sweep_with_traces(grid: &[GridAxis], base: &SimConfig, jobs: usize) -> Result<Vec<SweepPoint>> {
    sweep_impl(grid, base, jobs, true)
}

fn sweep_impl(grid: &[GridAxis], base: &SimConfig, jobs: usize, keep_traces: bool) -> Result<Vec<SweepPoint>> {
    let points = expand_grid(grid, base)?;
    let work: Vec<(usize, usize)> = points
        .iter()
        .enumerate()
        .flat_map(|(p, c)| (0..c.replicates).map(move |i| (p, i)))
        .collect();

    let results: Vec<Result<ReplicateResult>> = if jobs <= 1 {
        work.iter().map(|&(p, i)| run_replicate(&points[p], i, keep_traces)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| work.par_iter().map(|&(p, i)| run_replicate(&points[p], i, keep_traces)).collect())
    };

    let mut per_point: Vec<Vec<ReplicateResult>> = vec![Vec::new(); points.len()];
    for (&(p, _), r) in work.iter().zip(results) {
        per_point[p].push(r?);
    }
    Ok(points
        .into_iter()
        .zip(per_point)
        .map(|(config, replicates)| {
            let aggregate = aggregate(&replicates);
            SweepPoint { config, replicates, aggregate }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{compare, TopologyKind};

    #[test]
    fn grid_axis_parsing() {
        let axis = GridAxis::parse("alpha=0.3,0.5, 0.8").unwrap();
        assert_eq!(axis.key, "alpha");
        assert_eq!(axis.values, vec!["0.3", "0.5", "0.8"]);
        assert!(GridAxis::parse("alpha").is_err());
        assert!(GridAxis::parse("alpha=").is_err());
    }

    #[test]
    fn grid_expansion_order_and_validation() {
        let grid = [GridAxis::parse("scheme=global,local").unwrap(), GridAxis::parse("alpha=0.3,0.6").unwrap()];
        let points = expand_grid(&grid, &SimConfig::default()).unwrap();
        let labels: Vec<(Scheme, f64)> = points.iter().map(|p| (p.scheme, p.alpha)).collect();
        assert_eq!(
            labels,
            vec![(Scheme::Global, 0.3), (Scheme::Global, 0.6), (Scheme::Local, 0.3), (Scheme::Local, 0.6)]
        );
        assert!(expand_grid(&[GridAxis::parse("alpha=0.5,1.5").unwrap()], &SimConfig::default()).is_err());
        assert!(expand_grid(&[GridAxis::parse("bogus=1").unwrap()], &SimConfig::default()).is_err());
    }

    #[test]
    fn single_point_single_replicate_equals_compare() {
        let config = SimConfig { n: 20, d: 4, alpha: 0.5, ..SimConfig::default() };
        let swept = sweep(&[], &config, 1).unwrap();
        let direct = compare(&config).unwrap();
        let rep = &swept[0].replicates[0];
        assert_eq!(rep.cost_ratio, direct.cost_ratio);
        assert_eq!(rep.time_ratio, direct.time_ratio);
        assert_eq!(rep.selective.iterations, direct.selective.iterations);
    }

    #[test]
    fn parallel_matches_sequential() {
        let config = SimConfig { topology: TopologyKind::Chain, n: 8, replicates: 3, scheme: Scheme::Local, ..SimConfig::default() };
        let grid = [GridAxis::parse("alpha=0.4,0.7").unwrap()];
        assert_eq!(sweep(&grid, &config, 1).unwrap(), sweep(&grid, &config, 4).unwrap());
    }
}
