//! CSV results, aggregate tables, traces and the text report.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::sig9;
use crate::sim::{ReplicateResult, RunResult, Scheme, SimConfig, SweepPoint, TopologyKind, TraceRecord};
use crate::stats::{mean_sd, MeanSd};

pub const RESULTS_HEADER: &str =
    "scheme,alpha,p_fail,n,d,replicate,iterations,total_cost_attempted,total_cost_survived,converged,cost_ratio,time_ratio";

pub const AGGREGATE_HEADER: &str = "scheme,alpha,p_fail,n,d,replicates,\
iterations_mean,iterations_sd,total_cost_attempted_mean,total_cost_attempted_sd,\
total_cost_survived_mean,total_cost_survived_sd,converged_mean,\
cost_ratio_mean,cost_ratio_sd,time_ratio_mean,time_ratio_sd,\
baseline_iterations_mean,baseline_iterations_sd,baseline_cost_mean,baseline_cost_sd";

pub const TRACE_HEADER: &str = "t,disagreement,spread,links_selected,links_survived";

fn degree_field(config: &SimConfig) -> String {
    if config.topology == TopologyKind::Uniform && config.graph_file.is_none() {
        config.d.to_string()
    } else {
        String::new()
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(sig9).unwrap_or_default()
}

fn result_row(out: &mut String, scheme: Scheme, rep: &ReplicateResult, run: &RunResult, ratios: (Option<f64>, Option<f64>)) {
    let c = &rep.config;
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        scheme,
        sig9(c.alpha),
        sig9(c.p_fail),
        rep.node_count,
        degree_field(c),
        rep.replicate,
        run.iterations,
        sig9(run.total_cost_attempted),
        sig9(run.total_cost_survived),
        u8::from(run.converged),
        optional(ratios.0),
        optional(ratios.1),
    );
}

/// One row per run: for selective points the baseline row (ratios 1 when it
/// converged) precedes the selective row of the same replicate.
pub fn results_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for point in points {
        for rep in &point.replicates {
            if let Some(base) = &rep.baseline {
                let unit = base.converged.then_some(1.0);
                result_row(&mut out, Scheme::Baseline, rep, base, (unit, unit));
            }
            result_row(&mut out, rep.config.scheme, rep, &rep.selective, (rep.cost_ratio, rep.time_ratio));
        }
    }
    out
}

fn push_mean_sd(out: &mut String, m: &MeanSd) {
    if m.count == 0 {
        out.push_str(",,");
    } else {
        let _ = write!(out, ",{},{}", sig9(m.mean), sig9(m.sd));
    }
}

/// One row per grid point.
pub fn aggregate_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from(AGGREGATE_HEADER);
    out.push('\n');
    for point in points {
        let c = &point.config;
        let a = &point.aggregate;
        let n = point.replicates.first().map(|r| r.node_count).unwrap_or(c.n);
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            c.scheme,
            sig9(c.alpha),
            sig9(c.p_fail),
            n,
            degree_field(c),
            point.replicates.len()
        );
        push_mean_sd(&mut out, &a.iterations);
        push_mean_sd(&mut out, &a.cost_attempted);
        push_mean_sd(&mut out, &a.cost_survived);
        let _ = write!(out, ",{}", sig9(a.converged_fraction));
        push_mean_sd(&mut out, &a.cost_ratio);
        push_mean_sd(&mut out, &a.time_ratio);
        push_mean_sd(&mut out, &a.baseline_iterations);
        push_mean_sd(&mut out, &a.baseline_cost);
        out.push('\n');
    }
    out
}

pub fn trace_csv(trace: &[TraceRecord]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.t,
            sig9(r.disagreement),
            sig9(r.spread),
            r.links_selected,
            r.links_survived
        );
    }
    out
}

/// A parsed row of a results file.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub scheme: String,
    pub alpha: f64,
    pub p_fail: f64,
    pub n: usize,
    pub d: Option<usize>,
    pub replicate: usize,
    pub iterations: usize,
    pub total_cost_attempted: f64,
    pub total_cost_survived: f64,
    pub converged: bool,
    pub cost_ratio: Option<f64>,
    pub time_ratio: Option<f64>,
}

pub fn parse_results(text: &str) -> Result<Vec<ResultRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        None => return Ok(Vec::new()),
        Some((_, header)) if header.trim() == RESULTS_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Parse { line: 1, msg: format!("unexpected header `{header}`") });
        }
    }
    let mut rows = Vec::new();
    for (index, raw) in lines {
        let line = index + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        if fields.len() != 12 {
            return Err(Error::Parse { line, msg: format!("expected 12 fields, found {}", fields.len()) });
        }
        let bad = |name: &str, value: &str| Error::Parse { line, msg: format!("bad {name} `{value}`") };
        let num = |i: usize, name: &str| fields[i].parse::<f64>().map_err(|_| bad(name, fields[i]));
        let count = |i: usize, name: &str| fields[i].parse::<usize>().map_err(|_| bad(name, fields[i]));
        let opt_num = |i: usize, name: &str| -> Result<Option<f64>> {
            if fields[i].is_empty() {
                Ok(None)
            } else {
                num(i, name).map(Some)
            }
        };
        rows.push(ResultRow {
            scheme: fields[0].to_string(),
            alpha: num(1, "alpha")?,
            p_fail: num(2, "p_fail")?,
            n: count(3, "n")?,
            d: if fields[4].is_empty() { None } else { Some(count(4, "d")?) },
            replicate: count(5, "replicate")?,
            iterations: count(6, "iterations")?,
            total_cost_attempted: num(7, "total_cost_attempted")?,
            total_cost_survived: num(8, "total_cost_survived")?,
            converged: match fields[9] {
                "1" => true,
                "0" => false,
                other => return Err(bad("converged", other)),
            },
            cost_ratio: opt_num(10, "cost_ratio")?,
            time_ratio: opt_num(11, "time_ratio")?,
        });
    }
    Ok(rows)
}

const REPORT_HEADER: [&str; 10] =
    ["scheme", "alpha", "p_fail", "n", "d", "reps", "iterations", "cost", "cost_ratio", "time_ratio"];

fn show(m: &MeanSd, precision: usize) -> String {
    if m.count == 0 {
        "-".into()
    } else {
        format!("{:.*} ± {:.*}", precision, m.mean, precision, m.sd)
    }
}

/// Groups rows by `(scheme, alpha, p_fail, n, d)` and renders one line per
/// group, ordered by `p_fail`, then `alpha`, `n`, `d` and scheme.
pub fn report(rows: &[ResultRow]) -> String {
    let mut groups: Vec<(&ResultRow, Vec<&ResultRow>)> = Vec::new();
    for row in rows {
        let same = |k: &ResultRow| {
            k.scheme == row.scheme && k.alpha == row.alpha && k.p_fail == row.p_fail && k.n == row.n && k.d == row.d
        };
        match groups.iter_mut().find(|(k, _)| same(k)) {
            Some((_, members)) => members.push(row),
            None => groups.push((row, vec![row])),
        }
    }
    groups.sort_by(|(a, _), (b, _)| {
        a.p_fail
            .total_cmp(&b.p_fail)
            .then(a.alpha.total_cmp(&b.alpha))
            .then(a.n.cmp(&b.n))
            .then(a.d.cmp(&b.d))
            .then_with(|| a.scheme.cmp(&b.scheme))
    });

    let mut table: Vec<[String; 10]> = vec![REPORT_HEADER.map(String::from)];
    for (key, members) in &groups {
        let stat = |f: &dyn Fn(&ResultRow) -> Option<f64>| mean_sd(&members.iter().filter_map(|r| f(r)).collect::<Vec<_>>());
        table.push([
            key.scheme.clone(),
            sig9(key.alpha),
            sig9(key.p_fail),
            key.n.to_string(),
            key.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
            members.len().to_string(),
            show(&stat(&|r| Some(r.iterations as f64)), 1),
            show(&stat(&|r| Some(r.total_cost_attempted)), 1),
            show(&stat(&|r| r.cost_ratio), 3),
            show(&stat(&|r| r.time_ratio), 3),
        ]);
    }

    let widths: Vec<usize> =
        (0..REPORT_HEADER.len()).map(|c| table.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &table {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, &w)| format!("{cell:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
