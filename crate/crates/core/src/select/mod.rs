//! Per-iteration link selection: relax the binary link-choice problem to a
//! budgeted QP, solve it, and round by independent sampling.

pub mod global;
pub mod local;

use crate::consensus::LinkMask;
use crate::qp::LinkProbabilities;

/// A sampled mask together with the relaxed probabilities it was drawn from.
#[derive(Debug, Clone)]
pub struct Selection {
    pub mask: LinkMask,
    pub probs: LinkProbabilities,
    /// False if any underlying QP solve hit its iteration cap.
    pub solver_converged: bool,
}

pub(crate) fn check_alpha(alpha: f64) -> crate::error::Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(crate::error::Error::InvalidConfig(format!("alpha must lie in [0, 1], got {alpha}")))
    }
}
