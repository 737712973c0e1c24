//! Command-line front end behind the `active-consensus` binary.
//!
//! ```text
//! active-consensus gen <uniform|clustered|star|chain> [--n N] [--d D] [--seed S] [--out PATH]
//! active-consensus run --spec PATH --out PATH [--seed S] [--jobs N]
//! active-consensus sweep --spec PATH --grid key=v1,v2 ... --out PATH [--seed S] [--jobs N]
//! active-consensus report PATH
//! ```
//!
//! `run` and `sweep` write the per-run results to `--out`, the per-point
//! aggregates next to it as `<stem>_agg.csv`, and (`run` only) one trace per
//! run as `<stem>_trace_<scheme>_r<i>.csv`. Logging goes to stderr and is
//! controlled by `ACTIVE_CONSENSUS_LOG` (`off`, `info` or `debug`).

pub mod output;
pub mod spec;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use crate::error::{Error, Result};
use crate::sim::{sweep, sweep_with_traces, GridAxis, SweepPoint};
use crate::topology::{to_edge_list, Family};

pub use spec::ExperimentSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_TOPOLOGY: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

pub const LOG_ENV: &str = "ACTIVE_CONSENSUS_LOG";

#[derive(Debug, Parser)]
#[command(name = "active-consensus", version, about = "Energy-constrained average consensus with link selection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a topology and write it as an edge list.
    Gen {
        family: FamilyArg,
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Target mean degree (uniform only).
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every replicate of one experiment spec against the baseline.
    Run {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the spec's master seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run a cartesian grid of parameter values on top of a spec.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// `key=v1,v2,...`; repeat for more axes (first varies slowest).
        #[arg(long)]
        grid: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Summarize a results file as a table.
    Report { results: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Uniform,
    Clustered,
    Star,
    Chain,
}

impl FamilyArg {
    pub fn family(self, n: usize, d: usize) -> Family {
        match self {
            FamilyArg::Uniform => Family::Uniform { n, d },
            FamilyArg::Clustered => Family::Clustered,
            FamilyArg::Star => Family::Star { n },
            FamilyArg::Chain => Family::Chain { n },
        }
    }
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::InvalidConfig(_) => EXIT_PARSE,
        Error::InvalidGraph(_)
        | Error::GenerationFailed { .. }
        | Error::Disconnected { .. }
        | Error::UnknownNode { .. }
        | Error::NotAdjacent(..) => EXIT_TOPOLOGY,
        _ => EXIT_FAILURE,
    }
}

fn init_logging() {
    let level = std::env::var(LOG_ENV).unwrap_or_else(|_| "off".into());
    let filter = match level.as_str() {
        "off" | "info" | "debug" => level.as_str(),
        other => {
            eprintln!("warning: ignoring {LOG_ENV}={other} (expected off, info or debug)");
            "off"
        }
    };
    let _ = env_logger::Builder::new().parse_filters(filter).try_init();
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    run_with_args(std::env::args_os())
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    init_logging();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs one command; `Ok` carries the exit status so that non-convergence
/// can be reported after the outputs are written.
pub fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Gen { family, n, d, seed, out } => {
            let g = family.family(n, d).generate(seed)?;
            let text = to_edge_list(&g);
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
        Command::Run { spec, out, seed, jobs } => {
            let spec = load_spec(&spec, seed)?;
            let points = sweep_with_traces(&[], &spec.config, jobs)?;
            write_outputs(&out, &points, true)
        }
        Command::Sweep { spec, grid, out, seed, jobs } => {
            let spec = load_spec(&spec, seed)?;
            let axes = grid.iter().map(|g| GridAxis::parse(g)).collect::<Result<Vec<_>>>()?;
            let points = sweep(&axes, &spec.config, jobs)?;
            write_outputs(&out, &points, false)
        }
        Command::Report { results } => {
            let text = std::fs::read_to_string(&results)?;
            print!("{}", output::report(&output::parse_results(&text)?));
            Ok(EXIT_OK)
        }
    }
}

fn load_spec(path: &Path, seed: Option<u64>) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::load(path)?;
    if let Some(seed) = seed {
        spec.config.seed = seed;
    }
    info!("loaded {}", path.display());
    Ok(spec)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// `dir/<stem><suffix>` next to `out`.
pub fn sibling_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "results".into());
    out.with_file_name(format!("{stem}{suffix}"))
}

fn write_outputs(out: &Path, points: &[SweepPoint], traces: bool) -> Result<i32> {
    write_file(out, &output::results_csv(points))?;
    write_file(&sibling_path(out, "_agg.csv"), &output::aggregate_csv(points))?;
    let mut all_converged = true;
    for point in points {
        for rep in &point.replicates {
            let runs = rep.baseline.iter().map(|b| ("baseline", b)).chain([(rep.config.scheme.name(), &rep.selective)]);
            for (name, run) in runs {
                all_converged &= run.converged;
                if traces {
                    let path = sibling_path(out, &format!("_trace_{name}_r{}.csv", rep.replicate));
                    write_file(&path, &output::trace_csv(&run.trace))?;
                }
            }
        }
    }
    if all_converged {
        Ok(EXIT_OK)
    } else {
        eprintln!("warning: some runs stopped at max_iters without converging");
        Ok(EXIT_NOT_CONVERGED)
    }
}
