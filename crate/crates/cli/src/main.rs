//! `growthlab` — command-line driver over the core library.
//!
//! Exit codes: 0 on success (and on a verified/holding check), 1 when a
//! requested check fails (a violated inequality, a non-verified verdict),
//! 2 on usage or input errors (unknown group, malformed file, radius too
//! small for the requested computation, budget exceeded, ...).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use growthlab_core::{
    catalog_entry, catalog_names, enumerate_growth, estimate_delta, extract_asymptotics,
    check_fiber_bounds, check_lemma_inequality, fit_rational, lemma_radius_needed, load_builtin,
    run_theorem_report, ConvolutionCheck, EnumerationOptions, Error, FiberCheck,
    GroupPresentation, GrowthAsymptotics, GrowthTable, RationalGrowthFunction, ReportVerdict,
    SeriesCoefficients, SeriesKind, ThinnessReport, TriangleSample, DEFAULT_BUDGET_MB,
    DEFAULT_SAMPLE_SEED,
};

const BUDGET_ENV: &str = "GROWTHLAB_BUDGET_MB";

#[derive(Parser)]
#[command(
    name = "growthlab",
    version,
    about = "Exact word-growth computations for finitely presented groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Catalog key (f2, z, z2, c2c3, surface2) or path to a group file.
    #[arg(long, global = true)]
    group: Option<String>,

    /// Enumeration radius. Defaults: the catalog radius for growth/series/
    /// rate/verify, the smallest sufficient radius for lemma/fibers, 3 for
    /// delta.
    #[arg(long, global = true)]
    radius: Option<usize>,

    /// Thinness constant override; otherwise the group file's value is used.
    #[arg(long, global = true)]
    delta: Option<u32>,

    /// Keep canonical representatives of every element (growth output only).
    #[arg(long, global = true)]
    store_elements: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Memory budget for enumeration, in MiB (env: GROWTHLAB_BUDGET_MB).
    #[arg(long, global = true)]
    budget_mb: Option<u64>,

    /// RNG seed for sampled thinness estimation.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLE_SEED)]
    seed: u64,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate sphere and ball sizes of the Cayley graph.
    Growth,
    /// Fit the spherical growth series as a rational function.
    Series,
    /// Growth rate, polynomial correction exponent, and sphere constants.
    Rate,
    /// Check one convolution inequality instance at (n, m).
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Sweep all product fibers over the sphere pair S(n) x S(m).
    Fibers {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Estimate the thinness constant from geodesic triangles in a ball.
    Delta {
        /// Sample this many triangles at random instead of all of them.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Run the full verification pipeline and report a verdict.
    Verify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Failure that terminates the run: a message for stderr plus the exit code.
struct Fatal {
    message: String,
    code: u8,
}

impl Fatal {
    fn input(message: impl Into<String>) -> Fatal {
        Fatal {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<Error> for Fatal {
    fn from(e: Error) -> Fatal {
        Fatal::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Fatal> {
    let group = load_group(cli)?;
    let opts = EnumerationOptions {
        store_elements: cli.store_elements,
        budget_mb: resolve_budget(cli)?,
    };

    let (output, code) = match &cli.cmd {
        Cmd::Growth => {
            let table = enumerate_growth(&group, default_radius(cli, &group)?, &opts)?;
            (render_growth(cli, &group, &table)?, 0)
        }
        Cmd::Series => {
            let radius = default_radius(cli, &group)?;
            let table = enumerate_growth(&group, radius, &opts)?;
            let fit = fit_series(&table)?;
            (render_series(cli, &group, radius, &fit)?, 0)
        }
        Cmd::Rate => {
            let radius = default_radius(cli, &group)?;
            let table = enumerate_growth(&group, radius, &opts)?;
            let fit = fit_series(&table)?;
            let asy = extract_asymptotics(&fit, &table)?;
            (render_rate(cli, &group, radius, &asy)?, 0)
        }
        Cmd::Lemma { n, m } => {
            let delta = require_delta(cli, &group)?;
            let radius = cli
                .radius
                .unwrap_or_else(|| lemma_radius_needed(delta, *n, *m));
            let table = enumerate_growth(&group, radius, &opts)?;
            let check = check_lemma_inequality(&table, delta, *n, *m)?;
            let code = if check.holds { 0 } else { 1 };
            (render_lemma(cli, &group, &check)?, code)
        }
        Cmd::Fibers { n, m } => {
            let delta = require_delta(cli, &group)?;
            let needed = (n + m).max(delta as usize + (n + m).div_ceil(2));
            let radius = cli.radius.unwrap_or(needed);
            let store = EnumerationOptions {
                store_elements: true,
                ..opts
            };
            let table = enumerate_growth(&group, radius, &store)?;
            let check = check_fiber_bounds(&group, &table, delta, *n, *m)?;
            let code = if check.holds() { 0 } else { 1 };
            (render_fibers(cli, &group, &check)?, code)
        }
        Cmd::Delta { samples } => {
            let radius = cli.radius.unwrap_or(3);
            let sample = match samples {
                Some(count) => TriangleSample::Sample {
                    count: *count,
                    seed: cli.seed,
                },
                None => TriangleSample::Exhaustive,
            };
            let report = estimate_delta(&group, radius, sample, &opts)?;
            (render_delta(cli, &group, &report)?, 0)
        }
        Cmd::Verify => {
            let radius = default_radius(cli, &group)?;
            let report = run_theorem_report(&group, radius, cli.delta);
            let code = if report.verdict == ReportVerdict::Verified {
                0
            } else {
                1
            };
            (render_verify(cli, &report)?, code)
        }
    };

    emit(cli, &output)?;
    Ok(code)
}

// ---------------------------------------------------------------------------
// Input resolution.

fn load_group(cli: &Cli) -> Result<GroupPresentation, Fatal> {
    let source = cli
        .group
        .as_deref()
        .ok_or_else(|| Fatal::input("--group is required"))?;
    if Path::new(source).is_file() {
        return Ok(GroupPresentation::from_file(Path::new(source))?);
    }
    load_builtin(source).map_err(|e| match e {
        Error::UnknownGroup(_) => Fatal::input(format!(
            "group \"{source}\" is neither a readable file nor a catalog key \
             (catalog: {})",
            catalog_names().join(", ")
        )),
        other => other.into(),
    })
}

/// Radius for the whole-table commands: the flag, else the catalog default.
/// File-based groups have no catalog entry, so --radius is mandatory there.
fn default_radius(cli: &Cli, group: &GroupPresentation) -> Result<usize, Fatal> {
    if let Some(r) = cli.radius {
        return Ok(r);
    }
    catalog_entry(group.name())
        .map(|e| e.default_radius)
        .ok_or_else(|| {
            Fatal::input(format!(
                "group \"{}\" is not in the catalog; pass an explicit --radius",
                group.name()
            ))
        })
}

fn require_delta(cli: &Cli, group: &GroupPresentation) -> Result<u32, Fatal> {
    cli.delta.or_else(|| group.delta()).ok_or_else(|| {
        Fatal::input(format!(
            "group \"{}\" declares no thinness constant; pass --delta",
            group.name()
        ))
    })
}

fn resolve_budget(cli: &Cli) -> Result<u64, Fatal> {
    if let Some(mb) = cli.budget_mb {
        return Ok(mb);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|_| Fatal::input(format!("{BUDGET_ENV}={raw:?} is not a number of MiB"))),
        Err(_) => Ok(DEFAULT_BUDGET_MB),
    }
}

/// Default fit order: leaves at least three held-out coefficients beyond the
/// training window, so even a perfect-looking overfit gets caught.
fn fit_series(table: &GrowthTable) -> Result<RationalGrowthFunction, Fatal> {
    let spheres = SeriesCoefficients::new(SeriesKind::Spherical, table.spheres().to_vec())?;
    let max_order = table.radius().saturating_sub(3) / 2;
    Ok(fit_rational(&spheres, max_order)?)
}

// ---------------------------------------------------------------------------
// Rendering. Every branch is deterministic: same inputs, same bytes.

fn render_growth(cli: &Cli, group: &GroupPresentation, table: &GrowthTable) -> Result<String, Fatal> {
    match cli.format {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => Ok(pretty(&table.to_json(group.alphabet()))),
        Format::Text => {
            let mut out = format!("group {}  radius {}\n", table.group(), table.radius());
            let width = table.balls().last().map_or(1, |b| b.to_string().len());
            out.push_str(&format!(
                "{:>4}  {:>width$}  {:>width$}\n",
                "n", "sphere", "ball"
            ));
            for n in 0..=table.radius() {
                let _ = writeln!(
                    out,
                    "{n:>4}  {:>width$}  {:>width$}",
                    table.spheres()[n].to_string(),
                    table.balls()[n].to_string()
                );
            }
            if table.elements().is_some() {
                out.push('\n');
                out.push_str(&table.element_lines(group.alphabet())?);
            }
            Ok(out)
        }
    }
}

fn render_series(
    cli: &Cli,
    group: &GroupPresentation,
    radius: usize,
    fit: &RationalGrowthFunction,
) -> Result<String, Fatal> {
    match cli.format {
        Format::Csv => Err(no_csv("series")),
        Format::Json => {
            let doc = serde_json::json!({
                "schema": "growth-function/1",
                "group": group.name(),
                "radius": radius,
                "fit": fit,
            });
            Ok(pretty(&doc))
        }
        Format::Text => Ok(format!(
            "group {}  radius {radius}\nspherical growth function: {fit}\n\
             trained on coefficients {}..={}, exact through n = {}\n",
            group.name(),
            fit.train_window.0,
            fit.train_window.1,
            fit.verified_through,
        )),
    }
}

fn render_rate(
    cli: &Cli,
    group: &GroupPresentation,
    radius: usize,
    asy: &GrowthAsymptotics,
) -> Result<String, Fatal> {
    match cli.format {
        Format::Csv => Err(no_csv("rate")),
        Format::Json => {
            let doc = serde_json::json!({
                "schema": "asymptotics/1",
                "group": group.name(),
                "radius": radius,
                "asymptotics": asy,
            });
            Ok(pretty(&doc))
        }
        Format::Text => {
            let mut out = format!("group {}  radius {radius}\n", group.name());
            if asy.lambda_is_exact() {
                let _ = writeln!(
                    out,
                    "lambda = {} (exact, ~{:.9})",
                    asy.lambda.0,
                    approx(&asy.lambda.0)
                );
            } else {
                let _ = writeln!(
                    out,
                    "lambda in [{}, {}] (~[{:.9}, {:.9}])",
                    asy.lambda.0,
                    asy.lambda.1,
                    approx(&asy.lambda.0),
                    approx(&asy.lambda.1)
                );
            }
            let _ = writeln!(out, "alpha  = {}", asy.alpha);
            let _ = writeln!(out, "c_hat  = {} (~{:.9})", asy.c_hat, approx(&asy.c_hat));
            let _ = writeln!(out, "d_hat  = {} (~{:.9})", asy.d_hat, approx(&asy.d_hat));
            for w in &asy.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            Ok(out)
        }
    }
}

fn render_lemma(cli: &Cli, group: &GroupPresentation, check: &ConvolutionCheck) -> Result<String, Fatal> {
    match cli.format {
        Format::Csv => Err(no_csv("lemma")),
        Format::Json => {
            let doc = serde_json::json!({
                "schema": "lemma-check/1",
                "group": group.name(),
                "check": check,
            });
            Ok(pretty(&doc))
        }
        Format::Text => Ok(format!(
            "group {}  n = {}  m = {}  delta = {}\n\
             S(n)*S(m) = {}\nconvolution bound = {}\n{}\n",
            group.name(),
            check.n,
            check.m,
            check.delta,
            check.lhs,
            check.rhs,
            if check.holds { "holds" } else { "VIOLATED" },
        )),
    }
}

fn render_fibers(cli: &Cli, group: &GroupPresentation, check: &FiberCheck) -> Result<String, Fatal> {
    match cli.format {
        Format::Csv => Err(no_csv("fibers")),
        Format::Json => Ok(pretty(&check.to_json(group.alphabet()))),
        Format::Text => {
            let mut out = format!(
                "group {}  n = {}  m = {}  delta = {}\n\
                 pairs = {}  distinct products = {}\n\
                 every |hk| within [|n-m|, n+m]: {}\n",
                group.name(),
                check.n,
                check.m,
                check.delta,
                check.pairs,
                check.fibers,
                if check.ell_in_range { "yes" } else { "NO" },
            );
            if let Some(w) = &check.worst {
                let _ = writeln!(
                    out,
                    "largest fiber/bound: g = {}  |g| = {}  fiber = {}  bound = {}",
                    w.g.display(group.alphabet()),
                    w.ell,
                    w.fiber_size,
                    w.bound
                );
            }
            for v in &check.violations {
                let _ = writeln!(
                    out,
                    "VIOLATION: g = {}  |g| = {}  fiber = {} > bound = {}",
                    v.g.display(group.alphabet()),
                    v.ell,
                    v.fiber_size,
                    v.bound
                );
            }
            let _ = writeln!(
                out,
                "{}",
                if check.holds() { "holds" } else { "VIOLATED" }
            );
            Ok(out)
        }
    }
}

fn render_delta(cli: &Cli, group: &GroupPresentation, report: &ThinnessReport) -> Result<String, Fatal> {
    match cli.format {
        Format::Csv => Err(no_csv("delta")),
        Format::Json => Ok(pretty(&report.to_json(group.alphabet()))),
        Format::Text => Ok(report.render_text(group.alphabet())),
    }
}

fn render_verify(cli: &Cli, report: &growthlab_core::TheoremReport) -> Result<String, Fatal> {
    match cli.format {
        Format::Csv => Err(no_csv("verify")),
        Format::Json => Ok(pretty(&serde_json::to_value(report).map_err(|e| {
            Fatal::input(format!("report serialization failed: {e}"))
        })?)),
        Format::Text => Ok(report.render_text()),
    }
}

/// Readability hint only; every reported value stays exact.
fn approx(x: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn no_csv(cmd: &str) -> Fatal {
    Fatal::input(format!(
        "`{cmd}` has no CSV form; use --format text or --format json"
    ))
}

fn pretty(doc: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON rendering cannot fail");
    s.push('\n');
    s
}

fn emit(cli: &Cli, output: &str) -> Result<(), Fatal> {
    match &cli.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| Fatal::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Fatal::input(format!("stdout: {e}")))
        }
    }
}
