//! Experiment engine: single runs, selective-versus-baseline comparisons,
//! and replicated parameter sweeps.

mod config;
mod sweep;

use log::{debug, info};
use rand::Rng;

pub use config::{Scheme, SimConfig, StepSize, TopologyKind, CONFIG_KEYS};
pub use sweep::{expand_grid, replicate_config, sweep, sweep_with_traces, Aggregate, GridAxis, ReplicateResult, SweepPoint};

use crate::consensus::{disagreement, has_converged, init_states, masked_update, spread, LinkMask};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, derived_rng, stream};
use crate::select::global::select_links_global;
use crate::select::local::select_links_local;
use crate::spectral::step_info;
use crate::topology::{build_laplacian, Graph};

/// Clears each set bit independently with probability `p_fail`.
///
/// One uniform draw is consumed per edge whether or not its bit is set, so
/// two schemes sharing a failure stream see the same failure pattern.
pub fn apply_failures<R: Rng + ?Sized>(mask: &LinkMask, p_fail: f64, rng: &mut R) -> LinkMask {
    LinkMask { bits: mask.bits.iter().map(|&b| rng.random::<f64>() >= p_fail && b).collect() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub t: usize,
    pub disagreement: f64,
    pub spread: f64,
    pub links_selected: usize,
    pub links_survived: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub iterations: usize,
    /// Cost of every link selected, failed or not.
    pub total_cost_attempted: f64,
    /// Cost of the links that survived failures.
    pub total_cost_survived: f64,
    pub converged: bool,
    pub step: f64,
    pub initial_mean: f64,
    pub final_mean: f64,
    pub final_spread: f64,
    /// Iterations where a selection QP hit its iteration cap.
    pub solver_stalls: usize,
    pub trace: Vec<TraceRecord>,
}

/// Generates the configured topology and runs it.
pub fn run(config: &SimConfig) -> Result<RunResult> {
    config.validate()?;
    let graph = config.build_graph()?;
    run_on_graph(config, &graph)
}

/// Runs one scheme on `g` until the spread drops below `epsilon` or
/// `max_iters` updates have been applied.
pub fn run_on_graph(config: &SimConfig, g: &Graph) -> Result<RunResult> {
    config.validate()?;
    let n = g.node_count();
    let laplacian = build_laplacian(g);
    let step = if n == 1 {
        match config.delta {
            StepSize::Fixed(d) => d,
            StepSize::Auto => 1.0,
        }
    } else {
        let info = step_info(&laplacian)?;
        match config.delta {
            StepSize::Auto => info.step,
            StepSize::Fixed(d) => d,
        }
    };

    let mut x = init_states(n, derive_seed(config.seed, stream::INIT, 0));
    let initial_mean = x.mean();
    let mut select_rng = derived_rng(config.seed, stream::SELECT, 0);
    let mut failure_rng = derived_rng(config.seed, stream::FAILURE, 0);
    let m = g.edge_count();
    let costs = g.costs();

    let mut trace = Vec::new();
    let mut attempted = 0.0;
    let mut survived_cost = 0.0;
    let mut stalls = 0;
    while !has_converged(&x.values, config.epsilon) && x.t < config.max_iters {
        let mask = match config.scheme {
            Scheme::Baseline => LinkMask::all(m),
            Scheme::Global => {
                let sel = select_links_global(g, &x, step, config.alpha, &mut select_rng)?;
                stalls += usize::from(!sel.solver_converged);
                sel.mask
            }
            Scheme::Local => {
                let sel = select_links_local(g, &x, step, config.alpha, config.prediction_sign, &mut select_rng)?;
                stalls += usize::from(!sel.solver_converged);
                sel.mask
            }
        };
        let survived = if config.p_fail > 0.0 { apply_failures(&mask, config.p_fail, &mut failure_rng) } else { mask.clone() };
        x = masked_update(&x, g, &survived, step)?;
        if !x.is_finite() {
            return Err(Error::InvalidConfig(format!("states diverged at iteration {} (step {step})", x.t)));
        }
        attempted += mask.cost(costs);
        survived_cost += survived.cost(costs);
        trace.push(TraceRecord {
            t: x.t,
            disagreement: disagreement(&x, &laplacian)?,
            spread: spread(&x.values),
            links_selected: mask.count(),
            links_survived: survived.count(),
        });
    }

    let converged = has_converged(&x.values, config.epsilon);
    if stalls > 0 {
        debug!("{} QP solves hit the iteration cap", stalls);
    }
    info!(
        "{} run: {} iterations, cost {}, converged={converged}",
        config.scheme, x.t, attempted
    );
    Ok(RunResult {
        iterations: x.t,
        total_cost_attempted: attempted,
        total_cost_survived: survived_cost,
        converged,
        step,
        initial_mean,
        final_mean: x.mean(),
        final_spread: spread(&x.values),
        solver_stalls: stalls,
        trace,
    })
}

/// A selective run against the all-links baseline on the same network and
/// initial states.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonResult {
    pub selective: RunResult,
    pub baseline: RunResult,
    /// `None` unless both runs converged with nonzero baseline cost.
    pub cost_ratio: Option<f64>,
    pub time_ratio: Option<f64>,
}

pub(crate) fn ratios(selective: &RunResult, baseline: &RunResult) -> (Option<f64>, Option<f64>) {
    if !(selective.converged && baseline.converged) || baseline.iterations == 0 {
        return (None, None);
    }
    let cost = (baseline.total_cost_attempted > 0.0).then(|| selective.total_cost_attempted / baseline.total_cost_attempted);
    (cost, Some(selective.iterations as f64 / baseline.iterations as f64))
}

pub fn compare(config: &SimConfig) -> Result<ComparisonResult> {
    config.validate()?;
    let graph = config.build_graph()?;
    compare_on_graph(config, &graph)
}

pub fn compare_on_graph(config: &SimConfig, g: &Graph) -> Result<ComparisonResult> {
    if config.scheme == Scheme::Baseline {
        return Err(Error::InvalidConfig("compare needs a selective scheme (global or local)".into()));
    }
    let selective = run_on_graph(config, g)?;
    let baseline = run_on_graph(&SimConfig { scheme: Scheme::Baseline, ..config.clone() }, g)?;
    let (cost_ratio, time_ratio) = ratios(&selective, &baseline);
    Ok(ComparisonResult { selective, baseline, cost_ratio, time_ratio })
}
