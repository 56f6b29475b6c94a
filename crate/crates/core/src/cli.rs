//! Command-line front end: datasets as CSV, breakdown reports and a
//! self-check.
//!
//! Every CSV file gets a JSON sidecar `<file>.manifest.json` with the full
//! parameter set. Numbers are written with 17 significant digits. Exit codes:
//! 0 success, 1 validation or numerical failure, 2 adjudication failure, 3 I/O
//! error.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::boxed::{build_spectrum, density_snapshot, ModeSpectrum, DEFAULT_TRUNCATION_TOL};
use crate::breakdown::{breakdown_margin, BreakdownReport, CONFINEMENT_THRESHOLD};
use crate::free::{
    adjudicate_convention, adjudicated_violation, asymptotic_violation, asymptotic_violation_closed,
    free_violation_probability, AsymptoticResult, ComptonConvention, ConventionRecord, FreeQuadConfig,
};
use crate::numerics::{cosine_integral, sine_integral, REFERENCE_TABLE};
use crate::params::{lorentz_factor, SystemParams};
use crate::violation::{default_tau_grid, violation_curve, violation_probability};
use crate::{Error, Result};

/// Sizes used when the unit convention is adjudicated.
pub const ADJUDICATION_SIZES: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Parser)]
#[command(
    name = "lightcone",
    version,
    about = "Light-cone violation in the sudden expansion of a boxed particle"
)]
pub struct Cli {
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// P(τ) over [0, Λ − 1], refined around the specular time.
    ViolationSweep(SweepArgs),
    /// Density ρ(ζ) at a list of times.
    Snapshot(SnapshotArgs),
    /// Late-time P(s) of the half-line release on a log grid.
    Asymptotic(AsymptoticArgs),
    /// Total-breakdown conditions for one (s, Λ).
    Breakdown(BreakdownArgs),
    /// Run the built-in checks and the convention adjudication.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub s: f64,
    #[arg(long = "lambda")]
    pub lambda_factor: f64,
    #[arg(long, default_value_t = 0.005)]
    pub tau_step: f64,
    /// Bound on the probability weight discarded by mode truncation.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SnapshotArgs {
    #[arg(long)]
    pub s: f64,
    #[arg(long = "lambda")]
    pub lambda_factor: f64,
    /// Comma-separated times; defaults to 0, τ_rev/8, τ_rev/4, τ_rev/2,
    /// 5τ_rev/8 and Λ − 1.
    #[arg(long, value_delimiter = ',')]
    pub tau: Vec<f64>,
    #[arg(long, default_value_t = 0.005)]
    pub zeta_step: f64,
    #[arg(long, default_value_t = DEFAULT_TRUNCATION_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionChoice {
    Auto,
    Reduced,
    Nonreduced,
}

#[derive(Debug, Clone, Args)]
pub struct AsymptoticArgs {
    #[arg(long, default_value_t = 0.01)]
    pub s_min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 200)]
    pub n_points: usize,
    #[arg(long, value_enum, default_value_t = ConventionChoice::Auto)]
    pub convention: ConventionChoice,
    /// Time at which the exact dynamics are compared with the asymptotic
    /// formulas when the convention is adjudicated.
    #[arg(long, default_value_t = 1000.0)]
    pub tau_large: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BreakdownArgs {
    #[arg(long)]
    pub s: f64,
    #[arg(long = "lambda")]
    pub lambda_factor: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 1000.0)]
    pub tau_large: f64,
    /// Perturb one entry of the special-function reference table (checks that
    /// the table check can fail).
    #[arg(long, hide = true)]
    pub inject_table_fault: bool,
}

/// Sidecar metadata for an output file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub parameters: serde_json::Value,
    pub tolerances: serde_json::Value,
    pub convention: Option<ComptonConvention>,
    pub rows: usize,
    pub threads: Option<usize>,
    pub wall_seconds: f64,
    pub notes: Vec<String>,
}

/// Round-trip decimal form with 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// `<path>.<suffix>` next to an output file.
pub fn sidecar_path(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(OsString::from).unwrap_or_default();
    name.push(".");
    name.push(suffix);
    path.with_file_name(name)
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let io_err = |e: csv::Error| Error::io(path, io::Error::other(e));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(io_err)?;
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::io(path, io::Error::other(e)))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_manifest(out: &Path, manifest: &RunManifest) -> Result<()> {
    write_json(&sidecar_path(out, "manifest.json"), manifest)
}

fn manifest(
    command: &str,
    parameters: serde_json::Value,
    tolerances: serde_json::Value,
    started: Instant,
) -> RunManifest {
    RunManifest {
        command: command.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        parameters,
        tolerances,
        convention: None,
        rows: 0,
        threads: rayon::current_num_threads().into(),
        wall_seconds: started.elapsed().as_secs_f64(),
        notes: Vec::new(),
    }
}

pub fn cmd_violation_sweep(args: &SweepArgs) -> Result<RunManifest> {
    let started = Instant::now();
    let params = SystemParams::new(args.s, args.lambda_factor)?;
    let spectrum = build_spectrum(&params, args.tol)?;
    let grid = default_tau_grid(&params, args.tau_step)?;
    let curve = violation_curve(&spectrum, &params, &grid)?;
    let rows: Vec<Vec<String>> = (0..grid.len())
        .map(|i| {
            vec![
                format_number(curve.tau_grid[i]),
                format_number(curve.values[i]),
                format_number(curve.errors[i]),
            ]
        })
        .collect();
    write_csv(&args.out, &["tau", "p_violation", "error_estimate"], &rows)?;

    let clamped = curve.raw_values.iter().filter(|r| !(0.0..=1.0).contains(*r)).count();
    let mut m = manifest(
        "violation-sweep",
        json!({ "s": args.s, "lambda": args.lambda_factor, "tau_step": args.tau_step, "tau_grid_points": grid.len() }),
        json!({ "truncation_tol": args.tol, "max_mode": spectrum.max_mode(), "tail_bound": spectrum.tail_bound(), "method": curve.tolerances.method }),
        started,
    );
    m.rows = rows.len();
    if clamped > 0 {
        m.notes.push(format!(
            "{clamped} values clamped to [0, 1] within their error estimates"
        ));
    }
    write_manifest(&args.out, &m)?;
    Ok(m)
}

fn default_snapshot_times(params: &SystemParams) -> Vec<f64> {
    let rev = params.time_scales().tau_revival;
    vec![
        0.0,
        rev / 8.0,
        rev / 4.0,
        rev / 2.0,
        5.0 * rev / 8.0,
        params.lambda_factor() - 1.0,
    ]
}

fn uniform_positions(end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::domain(format!("position step must be positive, got {step}")));
    }
    let count = (end / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|j| (j as f64 * step).min(end)).collect();
    if end - grid[count] > 1e-9 * step {
        grid.push(end);
    }
    Ok(grid)
}

pub fn cmd_snapshot(args: &SnapshotArgs) -> Result<RunManifest> {
    let started = Instant::now();
    let params = SystemParams::new(args.s, args.lambda_factor)?;
    let spectrum = build_spectrum(&params, args.tol)?;
    let times = if args.tau.is_empty() {
        default_snapshot_times(&params)
    } else {
        args.tau.clone()
    };
    let grid = uniform_positions(params.lambda_factor(), args.zeta_step)?;
    let mut rows = Vec::with_capacity(times.len() * grid.len());
    for &tau in &times {
        let curve = density_snapshot(&spectrum, params.s(), &grid, tau)?;
        for (z, rho) in curve.points {
            rows.push(vec![format_number(tau), format_number(z), format_number(rho)]);
        }
    }
    write_csv(&args.out, &["tau", "zeta", "rho"], &rows)?;
    let mut m = manifest(
        "snapshot",
        json!({ "s": args.s, "lambda": args.lambda_factor, "tau": times, "zeta_step": args.zeta_step }),
        json!({ "truncation_tol": args.tol, "max_mode": spectrum.max_mode(), "tail_bound": spectrum.tail_bound() }),
        started,
    );
    m.rows = rows.len();
    write_manifest(&args.out, &m)?;
    Ok(m)
}

/// Adjudicates once and caches the record in `<out>.convention.json`; a cache
/// made for the same time and sizes is reused.
pub fn resolve_convention(out: &Path, tau_large: f64) -> Result<ConventionRecord> {
    let cache = sidecar_path(out, "convention.json");
    if let Ok(text) = fs::read_to_string(&cache) {
        if let Ok(rec) = serde_json::from_str::<ConventionRecord>(&text) {
            let sizes: Vec<f64> = rec.samples.iter().map(|x| x.s).collect();
            if rec.tau_large == tau_large && sizes == ADJUDICATION_SIZES {
                return Ok(rec);
            }
        }
    }
    let rec = adjudicate_convention(&ADJUDICATION_SIZES, tau_large, &FreeQuadConfig::default())?;
    write_json(&cache, &rec)?;
    Ok(rec)
}

pub fn cmd_asymptotic(args: &AsymptoticArgs) -> Result<RunManifest> {
    let started = Instant::now();
    if !(args.s_min > 0.0 && args.s_min < args.s_max && args.s_max.is_finite()) {
        return Err(Error::domain(format!(
            "need 0 < s_min < s_max, got [{}, {}]",
            args.s_min, args.s_max
        )));
    }
    if args.n_points < 2 {
        return Err(Error::domain("asymptotic grid needs at least two points"));
    }
    let (convention, record) = match args.convention {
        ConventionChoice::Reduced => (ComptonConvention::Reduced, None),
        ConventionChoice::Nonreduced => (ComptonConvention::NonReduced, None),
        ConventionChoice::Auto => {
            let rec = resolve_convention(&args.out, args.tau_large)?;
            (rec.convention, Some(rec))
        }
    };
    let ratio = (args.s_max / args.s_min).ln() / (args.n_points - 1) as f64;
    let sizes: Vec<f64> = (0..args.n_points)
        .map(|i| {
            if i + 1 == args.n_points {
                args.s_max
            } else {
                args.s_min * (ratio * i as f64).exp()
            }
        })
        .collect();
    use rayon::prelude::*;
    let results: Vec<AsymptoticResult> = sizes
        .par_iter()
        .map(|&s| AsymptoticResult::evaluate(s, convention))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            vec![
                format_number(r.s),
                format_number(r.p_quadrature),
                format_number(r.p_closed),
                format_number(r.p_series),
                r.convention.name().to_string(),
            ]
        })
        .collect();
    write_csv(
        &args.out,
        &["s", "p_quadrature", "p_closed", "p_series", "convention"],
        &rows,
    )?;
    let mut m = manifest(
        "asymptotic",
        json!({ "s_min": args.s_min, "s_max": args.s_max, "n_points": args.n_points, "convention_choice": format!("{:?}", args.convention).to_lowercase(), "tau_large": args.tau_large }),
        json!({ "quadrature_tol": 1e-10 }),
        started,
    );
    m.convention = Some(convention);
    m.rows = rows.len();
    if let Some(rec) = record {
        m.notes.push(format!(
            "adjudicated at τ = {}: max residual reduced {:.3e}, nonreduced {:.3e}, decisive = {}",
            rec.tau_large, rec.max_residual_reduced, rec.max_residual_nonreduced, rec.decisive
        ));
    }
    write_manifest(&args.out, &m)?;
    Ok(m)
}

/// Text report for `breakdown`.
pub fn breakdown_text(args: &BreakdownArgs) -> Result<String> {
    let r = BreakdownReport::new(args.s, args.lambda_factor)?;
    let margin = breakdown_margin(args.s, args.lambda_factor);
    let verdict = if margin == 0.0 {
        "BOUNDARY (inequality holds with equality: total breakdown)"
    } else if r.total_breakdown {
        "TOTAL BREAKDOWN"
    } else if !r.possible {
        "NO (size above threshold)"
    } else {
        "NO (expansion factor outside interval)"
    };
    let interval = match r.interval {
        Some((lo, hi)) => format!("[{lo:.3}, {hi:.3}]"),
        None => "none".into(),
    };
    Ok(format!(
        "s                     {}\n\
         lambda                {}\n\
         threshold s           {:.5} (pi/16)\n\
         threshold gamma       {}\n\
         gamma(s)              {:.2}\n\
         breakdown possible    {}\n\
         breakdown interval    {}\n\
         margin (2s/pi)L^2-L+2 {:.6}\n\
         verdict               {}\n",
        r.s, r.lambda_factor, CONFINEMENT_THRESHOLD, r.gamma_threshold, r.gamma, r.possible, interval, margin, verdict
    ))
}

/// Outcome of one self-check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name, passed, detail }
}

/// Runs the self-checks. An adjudication failure is returned as `Err`;
/// everything else is reported per check.
pub fn validation_checks(args: &ValidateArgs) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();

    let gamma = lorentz_factor(CONFINEMENT_THRESHOLD)?;
    out.push(check(
        "threshold lorentz factor",
        (gamma / 129.0 - 1.0).abs() <= 1e-12,
        format!("gamma = {gamma}"),
    ));

    let (lo, hi) = crate::breakdown::breakdown_interval(0.1).unwrap_or((f64::NAN, f64::NAN));
    out.push(check(
        "breakdown interval",
        (lo - 2.352).abs() < 1e-3 && (hi - 13.356).abs() < 1e-3,
        format!("({lo:.5}, {hi:.5})"),
    ));

    let mut table = REFERENCE_TABLE;
    if args.inject_table_fault {
        table[7].1 += 1e-6;
    }
    let worst = table
        .iter()
        .map(|&(x, si, ci)| {
            let dci = cosine_integral(x).map(|c| (c - ci).abs()).unwrap_or(f64::INFINITY);
            (sine_integral(x) - si).abs().max(dci)
        })
        .fold(0.0, f64::max);
    out.push(check(
        "special-function table",
        worst <= 1e-10,
        format!("max deviation {worst:.2e}"),
    ));

    let mut parseval = 0.0f64;
    for lambda in [1.0, 2.0, 5.0, 4.7] {
        let sp = ModeSpectrum::new(lambda, 1e-10)?;
        parseval = parseval.max((sp.parseval_sum() - 1.0).abs());
    }
    out.push(check(
        "parseval identity",
        parseval <= 1e-8,
        format!("max |sum - 1| = {parseval:.2e}"),
    ));

    let params = SystemParams::new(0.1, 5.0)?;
    let spectrum = build_spectrum(&params, DEFAULT_TRUNCATION_TOL)?;
    let scales = params.time_scales();
    let (mut periodic, mut specular) = (0.0f64, 0.0f64);
    let t0 = 0.37;
    let now = spectrum.at_time(0.1, t0)?;
    let later = spectrum.at_time(0.1, t0 + scales.tau_revival)?;
    let mirror = spectrum.at_time(0.1, scales.tau_specular)?;
    for j in 0..=100 {
        let z = 5.0 * j as f64 / 100.0;
        periodic = periodic.max((now.amplitude(z)? - later.amplitude(z)?).norm());
        specular = specular.max((mirror.amplitude(z)?.norm() - crate::boxed::initial_state(5.0 - z).abs()).abs());
    }
    out.push(check(
        "revival periodicity",
        periodic <= 1e-10,
        format!("max |diff| = {periodic:.2e}"),
    ));
    out.push(check(
        "specular symmetry",
        specular <= 1e-4,
        format!("sup-norm {specular:.2e}"),
    ));

    let full = violation_probability(&spectrum, &params, scales.tau_specular)?;
    out.push(check(
        "specular violation reaches 1",
        full.value >= 0.999,
        format!("P = {:.6}", full.value),
    ));

    let p2 = SystemParams::new(0.2, 5.0)?;
    let partial = violation_probability(&spectrum, &p2, 10.0 / PI)?;
    let w = 4.0 - 10.0 / PI;
    let expect = w - (2.0 * PI * w).sin() / (2.0 * PI);
    out.push(check(
        "specular violation below 1",
        (partial.value - expect).abs() <= 1e-3 && partial.value < 1.0,
        format!("P = {:.6}, expected {expect:.6}", partial.value),
    ));

    let tail = asymptotic_violation(1e3)?;
    out.push(check(
        "asymptotic normalization",
        tail.abs() <= 1e-6,
        format!("1 - 4pi*int = {tail:.2e}"),
    ));

    let mut closed = 0.0f64;
    for i in 0..30 {
        let arg = 0.05 * 1000f64.powf(i as f64 / 29.0);
        closed = closed.max((asymptotic_violation_closed(arg)? - asymptotic_violation(2.0 * PI * arg)?).abs());
    }
    out.push(check(
        "closed form vs integral",
        closed <= 1e-8,
        format!("max |diff| = {closed:.2e}"),
    ));

    let rec = adjudicate_convention(&ADJUDICATION_SIZES, args.tau_large, &FreeQuadConfig::default())?;
    let residuals: Vec<String> = rec
        .samples
        .iter()
        .map(|x| format!("s={}: {:.2e}/{:.2e}", x.s, x.residual_reduced, x.residual_nonreduced))
        .collect();
    out.push(check(
        "convention adjudication",
        rec.decisive,
        format!(
            "{} at tau = {} (reduced/nonreduced residuals {})",
            rec.convention,
            rec.tau_large,
            residuals.join(", ")
        ),
    ));

    let anchor = adjudicated_violation(rec.size_for_closed_argument(1.0), rec.convention)?;
    out.push(check(
        "unit-argument anchor near 1%",
        (anchor - 0.01).abs() <= 0.005,
        format!("P = {anchor:.5}"),
    ));

    let cfg = FreeQuadConfig::default();
    let mut long = 0.0f64;
    for s in ADJUDICATION_SIZES {
        let p = free_violation_probability(1000.0, s, &cfg)?;
        long = long.max((p.value - adjudicated_violation(s, rec.convention)?).abs());
    }
    out.push(check(
        "long-time consistency",
        long <= 0.01,
        format!("max residual at tau = 1000: {long:.2e}"),
    ));

    Ok(out)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => 3,
        Error::Adjudication(_) => 2,
        _ => 1,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::ViolationSweep(a) => {
            let m = cmd_violation_sweep(a)?;
            eprintln!("wrote {} rows to {} ({:.2} s)", m.rows, a.out.display(), m.wall_seconds);
        }
        Command::Snapshot(a) => {
            let m = cmd_snapshot(a)?;
            eprintln!("wrote {} rows to {} ({:.2} s)", m.rows, a.out.display(), m.wall_seconds);
        }
        Command::Asymptotic(a) => {
            let m = cmd_asymptotic(a)?;
            eprintln!(
                "wrote {} rows to {} (convention {})",
                m.rows,
                a.out.display(),
                m.convention.map_or("?", |c| c.name())
            );
        }
        Command::Breakdown(a) => print!("{}", breakdown_text(a)?),
        Command::Validate(a) => {
            let checks = validation_checks(a)?;
            let mut failed = 0;
            for c in &checks {
                println!(
                    "{}  {:<30} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
                failed += usize::from(!c.passed);
            }
            println!("{} of {} checks passed", checks.len() - failed, checks.len());
            return Ok(i32::from(failed > 0));
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return 1;
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 1;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for x in [0.0, 1.0, 0.1, PI, 1e-300, -2.5e17, 0.962_200_887_587_665] {
            let s = format_number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_number(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(
            sidecar_path(Path::new("/tmp/a/out.csv"), "manifest.json"),
            PathBuf::from("/tmp/a/out.csv.manifest.json")
        );
    }

    #[test]
    fn breakdown_reports() {
        let t = breakdown_text(&BreakdownArgs {
            s: 0.1,
            lambda_factor: 5.0,
        })
        .unwrap();
        assert!(t.contains("TOTAL BREAKDOWN") && t.contains("[2.352, 13.356]") && t.contains("494.48"));
        let t = breakdown_text(&BreakdownArgs {
            s: PI / 16.0,
            lambda_factor: 4.0,
        })
        .unwrap();
        assert!(t.contains("BOUNDARY"), "{t}");
        let t = breakdown_text(&BreakdownArgs {
            s: 1.0,
            lambda_factor: 5.0,
        })
        .unwrap();
        assert!(t.contains("NO (size above threshold)") && t.contains("5.93"));
    }

    #[test]
    fn positions_cover_box() {
        let g = uniform_positions(5.0, 0.005).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g[1000], 5.0);
        let g = uniform_positions(3.7, 0.5).unwrap();
        assert_eq!(*g.last().unwrap(), 3.7);
    }

    #[test]
    fn bad_arguments_exit_one() {
        assert_eq!(run(["lightcone", "breakdown", "--s", "abc", "--lambda", "5"]), 1);
        assert_eq!(run(["lightcone", "breakdown", "--s", "-1", "--lambda", "5"]), 1);
        assert_eq!(run(["lightcone", "breakdown", "--s", "0.1", "--lambda", "5"]), 0);
    }
}
