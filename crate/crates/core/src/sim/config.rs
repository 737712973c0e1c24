use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::select::local::PredictionSign;
use crate::topology::{self, Family, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scheme {
    /// Every link at every iteration.
    Baseline,
    Global,
    Local,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Baseline => "baseline",
            Scheme::Global => "global",
            Scheme::Local => "local",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "baseline" => Ok(Scheme::Baseline),
            "global" => Ok(Scheme::Global),
            "local" => Ok(Scheme::Local),
            other => Err(format!("unknown scheme `{other}` (expected baseline|global|local)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyKind {
    Uniform,
    Clustered,
    Star,
    Chain,
}

impl TopologyKind {
    pub fn name(&self) -> &'static str {
        match self {
            TopologyKind::Uniform => "uniform",
            TopologyKind::Clustered => "clustered",
            TopologyKind::Star => "star",
            TopologyKind::Chain => "chain",
        }
    }
}

impl FromStr for TopologyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(TopologyKind::Uniform),
            "clustered" => Ok(TopologyKind::Clustered),
            "star" => Ok(TopologyKind::Star),
            "chain" => Ok(TopologyKind::Chain),
            other => Err(format!("unknown topology `{other}` (expected uniform|clustered|star|chain)")),
        }
    }
}

/// Step size: the optimal full-graph step, or a fixed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSize {
    Auto,
    Fixed(f64),
}

impl fmt::Display for StepSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepSize::Auto => f.write_str("auto"),
            StepSize::Fixed(d) => write!(f, "{d}"),
        }
    }
}

/// One experiment. Keys of the `key = value` text form match the field names.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub topology: TopologyKind,
    pub n: usize,
    pub d: usize,
    pub topology_seed: u64,
    /// Overrides the generated topology with an edge-list file.
    pub graph_file: Option<PathBuf>,
    pub scheme: Scheme,
    pub alpha: f64,
    pub delta: StepSize,
    pub epsilon: f64,
    pub p_fail: f64,
    pub seed: u64,
    pub max_iters: usize,
    pub replicates: usize,
    pub prediction_sign: PredictionSign,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            topology: TopologyKind::Uniform,
            n: 100,
            d: 5,
            topology_seed: 0,
            graph_file: None,
            scheme: Scheme::Global,
            alpha: 0.3,
            delta: StepSize::Auto,
            epsilon: 1e-3,
            p_fail: 0.0,
            seed: 0,
            max_iters: 1_000_000,
            replicates: 1,
            prediction_sign: PredictionSign::Consistent,
        }
    }
}

pub const CONFIG_KEYS: &[&str] = &[
    "topology",
    "n",
    "d",
    "topology_seed",
    "graph_file",
    "scheme",
    "alpha",
    "delta",
    "epsilon",
    "p_fail",
    "seed",
    "max_iters",
    "replicates",
    "prediction_sign",
];

fn parse_num<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value.parse().map_err(|_| format!("invalid value `{value}` for `{key}`"))
}

impl SimConfig {
    /// Sets one field from its textual form. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "topology" => self.topology = value.parse()?,
            "n" => self.n = parse_num(key, value)?,
            "d" => self.d = parse_num(key, value)?,
            "topology_seed" => self.topology_seed = parse_num(key, value)?,
            "graph_file" => self.graph_file = if value.is_empty() { None } else { Some(PathBuf::from(value)) },
            "scheme" => self.scheme = value.parse()?,
            "alpha" => self.alpha = parse_num(key, value)?,
            "delta" => {
                self.delta = if value == "auto" { StepSize::Auto } else { StepSize::Fixed(parse_num(key, value)?) }
            }
            "epsilon" => self.epsilon = parse_num(key, value)?,
            "p_fail" => self.p_fail = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "max_iters" => self.max_iters = parse_num(key, value)?,
            "replicates" => self.replicates = parse_num(key, value)?,
            "prediction_sign" => self.prediction_sign = value.parse()?,
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// Textual value of one key, in the form accepted by [`SimConfig::set`].
    pub fn get(&self, key: &str) -> Option<String> {
        Some(match key {
            "topology" => self.topology.name().to_string(),
            "n" => self.n.to_string(),
            "d" => self.d.to_string(),
            "topology_seed" => self.topology_seed.to_string(),
            "graph_file" => self.graph_file.as_ref().map(|p| p.display().to_string()).unwrap_or_default(),
            "scheme" => self.scheme.to_string(),
            "alpha" => self.alpha.to_string(),
            "delta" => self.delta.to_string(),
            "epsilon" => self.epsilon.to_string(),
            "p_fail" => self.p_fail.to_string(),
            "seed" => self.seed.to_string(),
            "max_iters" => self.max_iters.to_string(),
            "replicates" => self.replicates.to_string(),
            "prediction_sign" => self.prediction_sign.to_string(),
            _ => return None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad(format!("alpha must lie in [0, 1], got {}", self.alpha));
        }
        if !(0.0..=1.0).contains(&self.p_fail) {
            return bad(format!("p_fail must lie in [0, 1], got {}", self.p_fail));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if let StepSize::Fixed(d) = self.delta {
            if !(d > 0.0 && d.is_finite()) {
                return bad(format!("delta must be positive, got {d}"));
            }
        }
        if self.replicates == 0 {
            return bad("replicates must be at least 1".into());
        }
        if self.max_iters == 0 {
            return bad("max_iters must be at least 1".into());
        }
        if self.graph_file.is_none() {
            match self.topology {
                TopologyKind::Uniform if self.n < 2 || self.d < 1 || self.d >= self.n => {
                    return bad(format!("uniform topology needs n >= 2 and 1 <= d < n (n={}, d={})", self.n, self.d));
                }
                TopologyKind::Star | TopologyKind::Chain if self.n < 2 => {
                    return bad(format!("{} topology needs n >= 2", self.topology.name()));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        match self.topology {
            TopologyKind::Uniform => Family::Uniform { n: self.n, d: self.d },
            TopologyKind::Clustered => Family::Clustered,
            TopologyKind::Star => Family::Star { n: self.n },
            TopologyKind::Chain => Family::Chain { n: self.n },
        }
    }

    /// Loads `graph_file` if set, otherwise generates the configured family.
    pub fn build_graph(&self) -> Result<Graph> {
        match &self.graph_file {
            Some(path) => {
                let load = || -> Result<Graph> {
                    let file = std::fs::File::open(path)?;
                    topology::read_edge_list(std::io::BufReader::new(file))
                };
                load().map_err(|e| match e {
                    Error::Io(_) | Error::Parse { .. } => Error::InvalidGraph(format!("{}: {e}", path.display())),
                    other => other,
                })
            }
            None => self.family().generate(self.topology_seed),
        }
    }

    /// `key = value` lines for every key, in [`CONFIG_KEYS`] order.
    pub fn to_spec_string(&self) -> String {
        CONFIG_KEYS
            .iter()
            .map(|k| format!("{k} = {}\n", self.get(k).expect("known key")))
            .collect()
    }
}
