use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use pivotlab::oracle::{decade_schedule, verify_convergence, verify_pivot_invariance, Verdict};
use pivotlab::pseudopivot::{format_order, iterate, IterationTrace, PseudopivotState, Termination};
use pivotlab::region::{four_point_region_sweep, hull_bound_check, three_point_line_check, RegionReport};
use pivotlab::{
    fit_weighted_line, pivot_point, pivot_point_weighted, Label, Multiplicities, PivotResult, PointSet, Rational,
    Scalar,
};
use serde::Serialize;

use crate::args::{Cli, Command, PivotArgs, PseudopivotArgs, Suite, SweepArgs, TrajectoryArgs, VerifyArgs};
use crate::error::{CliError, Result};
use crate::format::format_num;
use crate::input::{load_path, Loaded};
use crate::svg::{pseudopivot_svg, sweep_svg};
use crate::sweep_csv::SweepResult;

/// Largest number of repetition vectors a sweep will enumerate.
pub const MAX_COMBINATIONS: u64 = 100_000_000;

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Pivot(a) => cmd_pivot(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out, err),
        Command::Pseudopivot(a) => cmd_pseudopivot(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Trajectory(a) => cmd_trajectory(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn pivot_line<T: Scalar>(label: Label, p: &PivotResult<T>) -> String {
    match p {
        PivotResult::Finite(p) => {
            format!(
                "{label},{},{}",
                format_num(p.x.to_f64_lossy()),
                format_num(p.y.to_f64_lossy())
            )
        }
        PivotResult::AtInfinity => format!("{label},inf"),
    }
}

pub fn cmd_pivot(args: &PivotArgs, out: &mut dyn Write) -> Result<i32> {
    if args.exact {
        pivot_in::<Rational>(args, out)
    } else {
        pivot_in::<f64>(args, out)
    }
}

fn pivot_in<T: Scalar>(args: &PivotArgs, out: &mut dyn Write) -> Result<i32> {
    let Loaded { points, delta } = load_path::<T>(&args.file)?;
    let delta = match &args.delta {
        Some(d) => Some(Multiplicities::new(d.clone())?),
        None => delta,
    };
    let labels: Vec<Label> = match args.label {
        Some(l) => {
            points.check_label(Label(l))?;
            vec![Label(l)]
        }
        None => points.labels().collect(),
    };
    for label in labels {
        let p = match &delta {
            Some(d) => pivot_point_weighted(&points, label, d)?,
            None => pivot_point(&points, label)?,
        };
        writeln!(out, "{}", pivot_line(label, &p)).map_err(stdout_err)?;
    }
    Ok(0)
}

fn sweep_report(s: &PointSet<f64>, args: &SweepArgs) -> Result<RegionReport<f64>> {
    let free = if args.hull { s.len().saturating_sub(1) } else { s.len() };
    let combos = (args.kmax + 1)
        .checked_pow(free as u32)
        .filter(|&c| c <= MAX_COMBINATIONS);
    if combos.is_none() {
        return Err(CliError::Usage(format!(
            "(kmax + 1)^{free} repetition vectors exceeds the limit of {MAX_COMBINATIONS}"
        )));
    }
    if args.hull {
        return Ok(hull_bound_check(s, args.kmax, args.tol)?);
    }
    match s.len() {
        3 => Ok(three_point_line_check(s, args.kmax, args.tol)?),
        4 => Ok(four_point_region_sweep(s, args.kmax, args.tol)?),
        n => Err(CliError::Usage(format!(
            "region sweeps need 3 or 4 points, got {n}; use --hull for larger sets"
        ))),
    }
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let Loaded { points, .. } = load_path::<f64>(&args.file)?;
    let report = sweep_report(&points, args)?;
    let result = SweepResult::from_report(&report);

    match &args.out_csv {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
            result.write_csv(BufWriter::new(f))?;
        }
        None => result.write_csv(&mut *out)?,
    }
    if let Some(path) = &args.out_svg {
        let fit = fit_weighted_line(&points, &Multiplicities::ones(points.len())).ok();
        write_file(path, sweep_svg(&points, fit.as_ref(), &result).as_bytes())?;
    }

    let at_infinity: usize = report.checked_labels.iter().map(|&l| report.at_infinity(l)).sum();
    let violations = result.violations();
    let summary = (|| -> std::io::Result<()> {
        writeln!(
            err,
            "{} combinations, {} records, {} at infinity, {} violations",
            report.combinations(),
            report.records.len(),
            at_infinity,
            violations
        )?;
        for ((label, tag), count) in report.tally() {
            writeln!(err, "  label {label} {tag}: {count}")?;
        }
        Ok(())
    })();
    summary.map_err(|e| CliError::io("<stderr>", e))?;
    Ok(if violations == 0 { 0 } else { 1 })
}

fn trace_csv<T: Scalar>(t: &IterationTrace<T>) -> String {
    let mode = t.mode().as_str();
    let mut s = String::from("n,a,b,c,range,permutation,mode\n");
    for (n, (state, (order, range))) in t.states.iter().zip(t.orders.iter().zip(&t.ranges)).enumerate() {
        let [a, b, c] = state.values.clone().map(|v| format_num(v.to_f64_lossy()));
        s.push_str(&format!(
            "{n},{a},{b},{c},{},{},{mode}\n",
            format_num(range.to_f64_lossy()),
            format_order(order)
        ));
    }
    s
}

fn termination_note(t: &Termination) -> Option<String> {
    match t {
        Termination::Completed => None,
        Termination::Diverged { step, labels } => {
            let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            Some(format!(
                "diverged at step {step}: the pseudopivot of {} is at infinity",
                names.join(", ")
            ))
        }
        Termination::DigitsExceeded { step } => Some(format!(
            "stopped at step {step}: rational iterate exceeded the size limit"
        )),
    }
}

fn parse_triple<T: Scalar>(values: &[String]) -> Result<PseudopivotState<T>> {
    let parsed = values
        .iter()
        .map(|v| T::parse_literal(v).ok_or_else(|| CliError::Usage(format!("not a finite number: {v:?}"))))
        .collect::<Result<Vec<T>>>()?;
    let [a, b, c]: [T; 3] = parsed
        .try_into()
        .map_err(|_| CliError::Usage("expected three values".into()))?;
    if a == b || b == c || a == c {
        return Err(pivotlab::Error::DegenerateState.into());
    }
    Ok(PseudopivotState::new(a, b, c))
}

fn pseudopivot_in<T: Scalar>(args: &PseudopivotArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let start = parse_triple::<T>(&args.values)?;
    let trace = iterate(&start, args.steps);
    let csv = trace_csv(&trace);
    match &args.out_csv {
        Some(path) => write_file(path, csv.as_bytes())?,
        None => out.write_all(csv.as_bytes()).map_err(stdout_err)?,
    }
    if let Some(path) = &args.out_svg {
        let states: Vec<[f64; 3]> = trace
            .states
            .iter()
            .map(|s| s.values.clone().map(|v| v.to_f64_lossy()))
            .collect();
        write_file(path, pseudopivot_svg(&states).as_bytes())?;
    }
    if let Some(note) = termination_note(&trace.termination) {
        writeln!(err, "{note}").map_err(|e| CliError::io("<stderr>", e))?;
    }
    Ok(0)
}

pub fn cmd_pseudopivot(args: &PseudopivotArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if args.exact {
        pseudopivot_in::<Rational>(args, out, err)
    } else {
        pseudopivot_in::<f64>(args, out, err)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub file: String,
    pub passed: bool,
    pub suites: Vec<SuiteSummary>,
}

fn check(name: String, ok: Option<bool>, detail: String) -> Check {
    let status = match ok {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "n/a",
    };
    Check { name, status, detail }
}

fn invariance_suite(s: &PointSet<f64>, k_max: u64, tol: f64) -> Result<Vec<Check>> {
    s.labels()
        .map(|l| {
            let r = verify_pivot_invariance(s, l, k_max, tol)?;
            let ok = match r.verdict {
                Verdict::Pass => Some(true),
                Verdict::Fail => Some(false),
                Verdict::NotApplicable => None,
            };
            let detail = match ok {
                None => "pivot at infinity".to_string(),
                Some(_) => format!(
                    "max distance {} over k=0..{k_max}, limit {}",
                    format_num(r.max_distance),
                    format_num(r.tol * r.scale)
                ),
            };
            Ok(check(format!("label {l}"), ok, detail))
        })
        .collect()
}

fn convergence_suite(s: &PointSet<f64>) -> Result<Vec<Check>> {
    let schedule = decade_schedule();
    let mut checks = Vec::new();
    for r in s.labels() {
        for i in s.labels().filter(|&i| i != r) {
            let rep = verify_convergence(s, r, i, &schedule)?;
            let detail = match rep.final_distance() {
                Some(d) => format!(
                    "distance {} at k={}, limit {}",
                    format_num(d),
                    schedule[schedule.len() - 1],
                    format_num(pivotlab::oracle::CONVERGENCE_TOL * rep.scale)
                ),
                None => "pivot at infinity at the last k".to_string(),
            };
            checks.push(check(format!("pivot {i} toward {r}"), Some(rep.passed), detail));
        }
    }
    Ok(checks)
}

fn region_check(name: &str, report: &RegionReport<f64>) -> Check {
    let v = report.violation_count();
    let detail = format!("{} records, {v} violations", report.records.len());
    check(name.to_string(), Some(v == 0), detail)
}

fn regions_suite(s: &PointSet<f64>, k_max: u64, tol: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    match s.len() {
        3 => checks.push(region_check(
            "three-point line",
            &three_point_line_check(s, k_max, tol)?,
        )),
        4 => checks.push(region_check(
            "four-point regions",
            &four_point_region_sweep(s, k_max, tol)?,
        )),
        _ => {}
    }
    if s.len() >= 4 {
        checks.push(region_check("hull bound", &hull_bound_check(s, k_max, tol)?));
    }
    if checks.is_empty() {
        checks.push(check(
            "regions".into(),
            None,
            format!("no region rule for {} points", s.len()),
        ));
    }
    Ok(checks)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let Loaded { points, .. } = load_path::<f64>(&args.file)?;
    let suites = if args.suite.is_empty() {
        vec![Suite::Invariance, Suite::Convergence, Suite::Regions]
    } else {
        args.suite.clone()
    };
    let mut summaries = Vec::new();
    for suite in suites {
        let checks = match suite {
            Suite::Invariance => invariance_suite(&points, args.kmax.unwrap_or(50), args.tol)?,
            Suite::Convergence => convergence_suite(&points)?,
            Suite::Regions => regions_suite(&points, args.kmax.unwrap_or(4), pivotlab::region::SIGN_TOL)?,
        };
        let passed = checks.iter().all(|c| c.status != "fail");
        summaries.push(SuiteSummary {
            suite: suite.name(),
            passed,
            checks,
        });
    }
    let passed = summaries.iter().all(|s| s.passed);
    let summary = VerifySummary {
        file: args.file.display().to_string(),
        passed,
        suites: summaries,
    };

    if args.json {
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        writeln!(out, "{text}").map_err(stdout_err)?;
    } else {
        for s in &summary.suites {
            for c in &s.checks {
                writeln!(out, "{} {}: {} ({})", s.suite, c.name, c.status, c.detail).map_err(stdout_err)?;
            }
            writeln!(out, "{}: {}", s.suite, if s.passed { "pass" } else { "fail" }).map_err(stdout_err)?;
        }
        writeln!(out, "overall: {}", if passed { "pass" } else { "fail" }).map_err(stdout_err)?;
    }
    Ok(if passed { 0 } else { 1 })
}

pub fn cmd_trajectory(args: &TrajectoryArgs, out: &mut dyn Write) -> Result<i32> {
    let Loaded { points, .. } = load_path::<f64>(&args.file)?;
    let (label, repeat) = (Label(args.label), Label(args.repeat));
    points.check_label(label)?;
    points.check_label(repeat)?;
    writeln!(out, "k,x,y").map_err(stdout_err)?;
    for k in 0..=args.kmax {
        let d = Multiplicities::repeat_one(points.len(), repeat, k);
        let line = match pivot_point_weighted(&points, label, &d)? {
            PivotResult::Finite(p) => format!("{k},{},{}", format_num(p.x), format_num(p.y)),
            PivotResult::AtInfinity => format!("{k},inf,inf"),
        };
        writeln!(out, "{line}").map_err(stdout_err)?;
    }
    Ok(0)
}
