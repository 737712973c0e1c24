//! Experiment description files and the CSV outputs the command-line tool
//! writes, driven from library code.
//!
//! cargo run --example experiment_files

use active_consensus::cli::output::{aggregate_csv, parse_results, report, results_csv, trace_csv};
use active_consensus::cli::ExperimentSpec;
use active_consensus::sim::{sweep_with_traces, GridAxis};

const SPEC: &str = "\
# small local-scheme experiment
topology = uniform
n = 30
d = 4
scheme = local
alpha = 0.4
replicates = 2
seed = 17
";

fn main() -> active_consensus::Result<()> {
    let spec: ExperimentSpec = SPEC.parse()?;
    println!("normalized spec:\n{spec}");

    let points = sweep_with_traces(&[GridAxis::parse("p_fail=0,0.5")?], &spec.config, 1)?;
    let results = results_csv(&points);
    println!("results:\n{results}");
    println!("aggregates:\n{}", aggregate_csv(&points));
    let trace = trace_csv(&points[0].replicates[0].selective.trace);
    println!("first trace lines:\n{}", trace.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n{}", report(&parse_results(&results)?));
    Ok(())
}
