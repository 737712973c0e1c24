//! Energy-constrained distributed average consensus.
//!
//! At every iteration a subset of links is chosen so that the update removes
//! as much neighbor disagreement as possible within a per-iteration energy
//! budget. The binary choice is relaxed to a box- and budget-constrained
//! quadratic program and rounded by independent sampling, either for the
//! whole network at once ([`select::global`]) or node by node with local
//! predictions ([`select::local`]).
//!
//! Module map:
//!
//! - [`topology`]: graphs, Laplacians, network generators, edge-list files
//! - [`spectral`]: Jacobi eigensolver, optimal step, contraction factor
//! - [`consensus`]: states, link masks, full and masked updates
//! - [`qp`]: budgeted QP, projection, projected gradient, sampling
//! - [`select`]: global and local link selection
//! - [`sim`]: runs, comparisons against the all-links baseline, sweeps
//! - [`cli`]: the `active-consensus` command line and its file formats
//!
//! The `examples/` directory holds one runnable program per capability.

pub mod cli;
pub mod consensus;
pub mod error;
pub mod format;
pub mod matrix;
pub mod qp;
pub mod rng;
pub mod select;
pub mod sim;
pub mod spectral;
pub mod stats;
pub mod topology;

pub use error::{Error, Result};
