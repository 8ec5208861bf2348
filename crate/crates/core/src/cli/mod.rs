//! The `bikegeo` command line.
//!
//! Exit codes: 0 on success, 2 on argument errors, 1 on numerical
//! failures, 3 when `check` finds a violated invariant.

mod output;
mod suites;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::closedform::{
    frame_direction_closed, front_track_cartesian, kappa_closed, monodromy_increments, tau_closed,
    AxisFrame,
};
use crate::dynamics::{apex_initial_state, integrate, IntegrationOptions, SampledPath};
use crate::error::Error;
use crate::params::GeodesicParams;
use crate::rigid::reduce_angle;
use crate::rodshape::frenet_series;
use crate::shooting::{shoot, FramePlacement, ShootingOptions};
use crate::transforms::{conjecture_check, extract_monodromy, half_monodromy};

pub use output::{read_track_csv, TrackRow, TRACK_HEADER};
pub use suites::{run_suite, Suite, SuiteOutcome};

use output::{point_json, screw_json, write_track_csv};

#[derive(Debug, Parser)]
#[command(name = "bikegeo", version, about = "Bicycle geodesics in R³")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the geodesic equations and write the track.
    Simulate(TrackArgs),
    /// Evaluate the elliptic closed-form track.
    #[command(name = "closed-form")]
    ClosedForm(TrackArgs),
    /// Closed-form and extracted monodromy as JSON.
    Monodromy(RunArgs),
    /// Original and flipped tracks with the half monodromy I.
    Correspond(TrackArgs),
    /// Recover a geodesic between the endpoints of a forward run.
    Shoot(ShootArgs),
    /// Run invariant suites.
    Check(CheckArgs),
    /// Monodromy summary over a grid of parameters.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Tolerances {
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-12, allow_negative_numbers = true)]
    abs_tol: f64,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrackArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    t_max: f64,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    dt_out: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct ShootArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Duration of the forward run that generates the target placement.
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    t_max: f64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated values or `start:stop:count`.
    #[arg(long)]
    grid_a: String,
    #[arg(long)]
    grid_b: String,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(msg) => Failure::Usage(msg),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 1,
            Failure::Violation(_) => 3,
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Simulate(args) => simulate(&args),
        Command::ClosedForm(args) => closed_form(&args),
        Command::Monodromy(args) => monodromy(&args),
        Command::Correspond(args) => correspond(&args),
        Command::Shoot(args) => shoot_cmd(&args),
        Command::Check(args) => check(&args),
        Command::Sweep(args) => sweep(&args),
    };
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Usage(msg) | Failure::Numerical(msg) => eprintln!("error: {msg}"),
                Failure::Violation(msg) => eprintln!("check failed: {msg}"),
            }
            f.exit_code()
        }
    }
}

fn integration_options(tol: &Tolerances, dt_out: f64) -> Result<IntegrationOptions, Failure> {
    if !(tol.rel_tol > 0.0 && tol.abs_tol > 0.0) {
        return Err(Failure::Usage("tolerances must be positive".into()));
    }
    if !(dt_out > 0.0) {
        return Err(Failure::Usage("--dt-out must be positive".into()));
    }
    Ok(IntegrationOptions {
        rel_tol: tol.rel_tol,
        abs_tol: tol.abs_tol,
        dt_out,
        ..IntegrationOptions::default()
    })
}

fn positive_duration(t_max: f64) -> Result<f64, Failure> {
    if t_max > 0.0 && t_max.is_finite() {
        Ok(t_max)
    } else {
        Err(Failure::Usage("--t-max must be positive".into()))
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Numerical(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn params_json(g: &GeodesicParams) -> Value {
    json!({ "a": g.a, "b": g.b })
}

fn rows_of_path(path: &SampledPath, g: &GeodesicParams) -> Result<Vec<TrackRow>, Failure> {
    let frenet = frenet_series(path, g)?;
    Ok(path
        .samples()
        .iter()
        .zip(frenet)
        .map(|(s, f)| TrackRow {
            t: s.t,
            front: s.x,
            back: s.back(),
            kappa: f.kappa,
            tau: f.tau,
        })
        .collect())
}

fn track_text(rows: &[TrackRow], g: &GeodesicParams, format: Format) -> String {
    match format {
        Format::Csv => write_track_csv(rows),
        Format::Json => {
            let samples: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "t": r.t,
                        "front": point_json(&r.front),
                        "back": point_json(&r.back),
                        "kappa": r.kappa,
                        "tau": r.tau,
                    })
                })
                .collect();
            let doc = json!({ "params": params_json(g), "samples": samples });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    }
}

fn simulate(args: &TrackArgs) -> CliResult {
    let g = GeodesicParams::new(args.run.a, args.run.b)?;
    let opts = integration_options(&args.run.tol, args.dt_out)?;
    let path = integrate(
        &apex_initial_state(g.a, g.b)?,
        positive_duration(args.t_max)?,
        &opts,
    )?;
    let rows = rows_of_path(&path, &g)?;
    emit(args.run.out.as_deref(), &track_text(&rows, &g, args.format))
}

fn closed_form_rows(g: &GeodesicParams, t_max: f64, dt_out: f64) -> Result<Vec<TrackRow>, Failure> {
    let frame = AxisFrame::from_state(&apex_initial_state(g.a, g.b)?)?;
    let count = (t_max / dt_out).floor() as usize;
    let mut times: Vec<f64> = (0..=count).map(|i| i as f64 * dt_out).collect();
    if t_max - times[count] > 1e-9 * dt_out {
        times.push(t_max);
    }
    times
        .into_iter()
        .map(|t| {
            let front = frame.to_world(&front_track_cartesian(t, g)?);
            let v = frame.to_world_direction(&frame_direction_closed(t, g)?);
            Ok(TrackRow {
                t,
                front,
                back: front - v,
                kappa: kappa_closed(t, g),
                tau: tau_closed(t, g),
            })
        })
        .collect()
}

fn closed_form(args: &TrackArgs) -> CliResult {
    let g = GeodesicParams::new(args.run.a, args.run.b)?;
    integration_options(&args.run.tol, args.dt_out)?;
    let rows = closed_form_rows(&g, positive_duration(args.t_max)?, args.dt_out)?;
    emit(args.run.out.as_deref(), &track_text(&rows, &g, args.format))
}

fn monodromy_report(g: &GeodesicParams, tol: &Tolerances) -> Result<Value, Failure> {
    let closed = monodromy_increments(g)?;
    let opts = integration_options(tol, 0.01)?;
    let path = integrate(&apex_initial_state(g.a, g.b)?, 2.05 * closed.period, &opts)?;
    let fit = extract_monodromy(&path, g)?;
    let conjecture = if g.b != 0.0 {
        let c = conjecture_check(&path, g)?;
        json!({ "angle_I": c.angle_found, "matches": c.matches })
    } else {
        Value::Null
    };
    Ok(json!({
        "params": params_json(g),
        "period": closed.period,
        "closed": { "dtheta": closed.delta_theta, "dz": closed.delta_z },
        "numeric": {
            "dtheta": fit.screw.delta_theta,
            "dz": fit.screw.delta_z,
            "axis_point": point_json(&fit.screw.axis_point),
            "axis_dir": point_json(&fit.screw.axis_dir),
            "residual": fit.rms,
        },
        "conjecture": conjecture,
    }))
}

fn monodromy(args: &RunArgs) -> CliResult {
    let g = GeodesicParams::new(args.a, args.b)?;
    if g.is_soliton() {
        return Err(Error::Soliton("K(1) = ∞ at (a, b) = (1, 0)".into()).into());
    }
    let report = monodromy_report(&g, &args.tol)?;
    emit(
        args.out.as_deref(),
        &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
    )
}

fn sibling_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{tag}"),
    };
    path.with_file_name(name)
}

fn correspond(args: &TrackArgs) -> CliResult {
    let g = GeodesicParams::new(args.run.a, args.run.b)?;
    let period = g.period()?;
    let opts = integration_options(&args.run.tol, args.dt_out)?;
    let t_end = positive_duration(args.t_max)?.max(2.05 * period);
    let path = integrate(&apex_initial_state(g.a, g.b)?, t_end, &opts)?;
    let hm = half_monodromy(&path, &g)?;
    let conj = conjecture_check(&path, &g)?;
    let report = json!({
        "params": params_json(&g),
        "period": period,
        "shift": 0.5 * period,
        "I": screw_json(&hm.half.screw, hm.half.rms),
        "M": screw_json(&hm.full.screw, hm.full.rms),
        "square_residual": hm.square_residual,
        "translation_residual": hm.translation_residual,
        "conjecture": {
            "angle_I": conj.angle_found,
            "predicted": conj.angle_predicted,
            "matches": conj.matches,
        },
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );
    if let Some(out) = &args.run.out {
        let rows = rows_of_path(&path, &g)?;
        let flipped = path.flipped();
        let flipped_rows = rows_of_path(&flipped, &g)?;
        emit(Some(out), &track_text(&rows, &g, args.format))?;
        emit(
            Some(&sibling_path(out, "flipped")),
            &track_text(&flipped_rows, &g, args.format),
        )?;
    }
    Ok(())
}

fn shoot_cmd(args: &ShootArgs) -> CliResult {
    let g = GeodesicParams::new(args.run.a, args.run.b)?;
    let t_max = positive_duration(args.t_max)?;
    let fine = integration_options(&args.run.tol, t_max)?;
    let s0 = apex_initial_state(g.a, g.b)?;
    let target = integrate(&s0, t_max, &fine)?;
    let from = FramePlacement::of_state(&s0);
    let to = FramePlacement::of_state(target.samples().last().expect("non-empty path"));
    let mut opts = ShootingOptions::default();
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    let solutions = shoot(&from, &to, &opts)?;
    let placement = |f: &FramePlacement| json!({ "x": point_json(&f.x), "v": point_json(&f.v) });
    let report = json!({
        "params": params_json(&g),
        "from": placement(&from),
        "to": placement(&to),
        "seed": opts.seed,
        "solutions": solutions.iter().map(|s| json!({
            "p": point_json(&s.p),
            "velocity": point_json(&s.velocity),
            "duration": s.duration,
            "residual": s.residual,
            "iterations": s.iterations,
        })).collect::<Vec<_>>(),
    });
    emit(
        args.run.out.as_deref(),
        &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
    )
}

fn check(args: &CheckArgs) -> CliResult {
    let outcomes = run_suite(args.suite);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!("{o}");
        if !o.passed {
            failed.push(o.name.clone());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(failed.join(", ")))
    }
}

fn parse_grid(text: &str, flag: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("{flag}: cannot parse `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        return match n {
            0 => Err(bad()),
            1 => Ok(vec![lo]),
            _ => Ok((0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect()),
        };
    }
    text.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
        .collect()
}

/// Why a grid point is skipped, if it lies on a singular locus.
fn exclusion(a: f64, b: f64) -> Option<&'static str> {
    if (a - 1.0).abs() < 1e-6 && b.abs() < 1e-6 {
        Some("soliton (a = 1, b = 0)")
    } else if (a * a + b * b - a).abs() < 1e-6 {
        Some("track meets the axis (a² + b² = a)")
    } else {
        None
    }
}

struct SweepRow {
    a: f64,
    b: f64,
    period: f64,
    closed_dtheta: f64,
    closed_dz: f64,
    numeric_dtheta: f64,
    numeric_dz: f64,
    residual: f64,
}

fn sweep_point(a: f64, b: f64, tol: &Tolerances) -> Result<SweepRow, Failure> {
    let g = GeodesicParams::new(a, b)?;
    let report = monodromy_report(&g, tol)?;
    let f = |path: &str| {
        report
            .pointer(path)
            .and_then(Value::as_f64)
            .unwrap_or(f64::NAN)
    };
    Ok(SweepRow {
        a,
        b,
        period: f("/period"),
        closed_dtheta: f("/closed/dtheta"),
        closed_dz: f("/closed/dz"),
        numeric_dtheta: f("/numeric/dtheta"),
        numeric_dz: f("/numeric/dz"),
        residual: f("/numeric/residual"),
    })
}

fn sweep(args: &SweepArgs) -> CliResult {
    let grid_a = parse_grid(&args.grid_a, "--grid-a")?;
    let grid_b = parse_grid(&args.grid_b, "--grid-b")?;
    integration_options(&args.tol, 0.01)?;
    if let Some(a) = grid_a.iter().find(|a| !(**a >= 0.0)) {
        return Err(Failure::Usage(format!(
            "--grid-a: a must be non-negative, got {a}"
        )));
    }
    let mut points = Vec::new();
    for &a in &grid_a {
        for &b in &grid_b {
            match exclusion(a, b) {
                Some(reason) => eprintln!("excluded (a, b) = ({a}, {b}): {reason}"),
                None => points.push((a, b)),
            }
        }
    }
    let results: Vec<Result<SweepRow, Failure>> = points
        .par_iter()
        .map(|&(a, b)| sweep_point(a, b, &args.tol))
        .collect();

    let mut rows = Vec::new();
    let mut failures = 0;
    for ((a, b), r) in points.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(Failure::Usage(msg) | Failure::Numerical(msg) | Failure::Violation(msg)) => {
                eprintln!("failed (a, b) = ({a}, {b}): {msg}");
                failures += 1;
            }
        }
    }
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from(
                "a,b,period,closed_dtheta,closed_dz,numeric_dtheta,numeric_dz,residual\n",
            );
            for r in &rows {
                let fields = [
                    r.a,
                    r.b,
                    r.period,
                    r.closed_dtheta,
                    r.closed_dz,
                    r.numeric_dtheta,
                    r.numeric_dz,
                    r.residual,
                ];
                let line: Vec<String> = fields.iter().map(|v| output::fmt_float(*v)).collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let doc: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "params": { "a": r.a, "b": r.b },
                        "period": r.period,
                        "closed": { "dtheta": r.closed_dtheta, "dz": r.closed_dz },
                        "numeric": {
                            "dtheta": r.numeric_dtheta,
                            "dz": r.numeric_dz,
                            "residual": r.residual,
                        },
                        "mismatch_dtheta": crate::rigid::angle_distance(
                            reduce_angle(r.closed_dtheta).0,
                            r.numeric_dtheta,
                        ),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    emit(args.out.as_deref(), &text)?;
    if failures > 0 {
        return Err(Failure::Numerical(format!(
            "{failures} grid point(s) failed"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_parse_in_both_forms() {
        assert!(matches!(parse_grid("0.5,1,2", "--grid-a"), Ok(v) if v == vec![0.5, 1.0, 2.0]));
        assert!(matches!(parse_grid("0:1:5", "--grid-a"), Ok(v) if v.len() == 5 && v[4] == 1.0));
        assert!(parse_grid("0,1,x", "--grid-a").is_err());
        assert!(parse_grid("0:1:0", "--grid-a").is_err());
    }

    #[test]
    fn singular_loci_are_excluded() {
        assert!(exclusion(1.0, 0.0).is_some());
        assert!(exclusion(0.5, 0.5).is_some());
        assert!(exclusion(0.5, 1.0).is_none());
        assert!(exclusion(1.0, 0.5).is_none());
    }

    #[test]
    fn sibling_names() {
        assert_eq!(
            sibling_path(Path::new("/tmp/x/track.csv"), "flipped"),
            Path::new("/tmp/x/track.flipped.csv")
        );
        assert_eq!(
            sibling_path(Path::new("track"), "flipped"),
            Path::new("track.flipped")
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["bikegeo", "simulate", "--a", "0.5"]), 2);
        assert_eq!(run(["bikegeo", "simulate", "--a", "-1", "--b", "0"]), 2);
        assert_eq!(run(["bikegeo", "monodromy", "--a", "1", "--b", "0"]), 1);
        assert_eq!(run(["bikegeo", "nonsense"]), 2);
        assert_eq!(Failure::Violation("x".into()).exit_code(), 3);
        assert_eq!(Failure::from(Error::domain("x")).exit_code(), 2);
        assert_eq!(Failure::from(Error::Degenerate("x".into())).exit_code(), 1);
    }
}
