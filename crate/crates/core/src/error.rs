use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} out of range for graph with {node_count} nodes")]
    UnknownNode { node: usize, node_count: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },

    #[error("graph is disconnected (algebraic connectivity {lambda2:e}); consensus is unreachable")]
    Disconnected { lambda2: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("edge {edge} is missing a probability from endpoint {node}")]
    MissingEndpoint { edge: usize, node: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
