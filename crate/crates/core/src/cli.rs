//! Command-line front end. [`run`] parses arguments and writes to the given
//! streams, returning the process exit code:
//! 0 on success, 1 on numerical or validation failure, 2 on usage errors.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::beta::fit_beta_scenario;
use crate::analysis::curves::{CurveSource, PdfCurve};
use crate::analysis::distribution::{cdf_curve, moment, MAX_MOMENT_ORDER};
use crate::analysis::oracle::MixtureOracle;
use crate::closedform::{curve_grid, pdf_curve};
use crate::config::{Dimension, NetworkConfig, Scenario};
use crate::error::Error;
use crate::montecarlo::{rwp_density_crosscheck, simulate_detailed};
use crate::validation::{validate_configs, ValidationOptions, ValidationReport};

#[derive(Debug, Parser)]
#[command(name = "internodal", version, about = "Internodal distance distributions in concentric disks and balls")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density curve on [0, r1 + r2].
    Pdf(PdfArgs),
    /// Cumulative distribution curve.
    Cdf(CdfArgs),
    /// Raw moments E[r^k] for k = 0..=max-order.
    Moments(MomentArgs),
    /// Beta approximation of r / (r1 + r2) by moment matching.
    FitBeta(ConfigArgs),
    /// Monte Carlo summary with histogram and KS statistic.
    Simulate(SimulateArgs),
    /// Run the full check list and report pass/fail per check.
    Validate(ValidateArgs),
    /// Compare simulated waypoint positions with the RWP radial density.
    RwpCheck(RwpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Closed,
    Oracle,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Spatial dimension.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub dim: u8,
    /// Scenario s1..s4 (s1: inner mobile, s2: outer mobile, s3: both, s4: neither).
    #[arg(long)]
    pub scenario: Scenario,
    /// Inner radius.
    #[arg(long, allow_negative_numbers = true)]
    pub r1: f64,
    /// Outer radius.
    #[arg(long, allow_negative_numbers = true)]
    pub r2: f64,
}

impl ConfigArgs {
    fn config(&self) -> Result<NetworkConfig, Error> {
        let dim = Dimension::from_degree(self.dim).ok_or(Error::InvalidConfig(format!("dim {}", self.dim)))?;
        NetworkConfig::new(dim, self.scenario, self.r1, self.r2)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PdfArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Uniform grid size before breakpoint insertion.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub points: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Closed-form formulas, or quadrature of the mixture integral.
    #[arg(long, value_enum, default_value = "closed")]
    pub source: Source,
}

#[derive(Debug, Clone, Args)]
pub struct CdfArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub points: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct MomentArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=MAX_MOMENT_ORDER as i64))]
    pub max_order: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Number of node pairs.
    #[arg(short = 'n', long = "samples", value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Seed of the counter-based streams; mandatory.
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub bins: u64,
    /// Also write the histogram as CSV.
    #[arg(long)]
    pub hist_out: Option<PathBuf>,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// All sixteen reference configurations.
    #[arg(long, conflicts_with_all = ["dim", "scenario", "r1", "r2"])]
    pub all: bool,
    #[arg(long, required_unless_present = "all", value_parser = clap::value_parser!(u8).range(2..=3))]
    pub dim: Option<u8>,
    #[arg(long, required_unless_present = "all")]
    pub scenario: Option<Scenario>,
    #[arg(long, required_unless_present = "all", allow_negative_numbers = true)]
    pub r1: Option<f64>,
    #[arg(long, required_unless_present = "all", allow_negative_numbers = true)]
    pub r2: Option<f64>,
    #[arg(short = 'n', long = "samples", value_parser = clap::value_parser!(u64).range(10_000..))]
    pub n: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RwpArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub dim: u8,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(short = 'n', long = "samples", value_parser = clap::value_parser!(u64).range(100_000..))]
    pub n: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonPositiveRadius(_)
            | Error::InnerExceedsOuter { .. }
            | Error::NonFiniteInput(_)
            | Error::InvalidConfig(_)
            | Error::Precondition(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn write_csv<W: Write>(out: &mut W, header: &str, grid: &[f64], values: &[f64]) -> std::io::Result<()> {
    writeln!(out, "r,{header}")?;
    for (r, v) in grid.iter().zip(values) {
        writeln!(out, "{},{}", format_number(*r), format_number(*v))?;
    }
    Ok(())
}

fn write_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_pdf<W: Write>(args: &PdfArgs, out: &mut W) -> Result<i32, Failure> {
    let cfg = args.config.config()?;
    let curve = match args.source {
        Source::Closed => pdf_curve(cfg, args.points as usize)?,
        Source::Oracle => {
            let oracle = MixtureOracle::new(cfg)?;
            let grid = curve_grid(&cfg, args.points as usize)?;
            let values = grid.iter().map(|&r| oracle.try_pdf(r)).collect::<Result<Vec<_>, _>>()?;
            PdfCurve { config: cfg, source: CurveSource::Oracle, grid, values }
        }
    };
    match args.format {
        OutputFormat::Csv => write_csv(out, "pdf", &curve.grid, &curve.values)?,
        OutputFormat::Json => write_json(out, &curve)?,
    }
    Ok(0)
}

fn cmd_cdf<W: Write>(args: &CdfArgs, out: &mut W) -> Result<i32, Failure> {
    let curve = cdf_curve(args.config.config()?, args.points as usize)?;
    match args.format {
        OutputFormat::Csv => write_csv(out, "cdf", &curve.grid, &curve.values)?,
        OutputFormat::Json => write_json(out, &curve)?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct MomentsReport {
    config: NetworkConfig,
    moments: BTreeMap<u32, f64>,
}

fn cmd_moments<W: Write>(args: &MomentArgs, out: &mut W) -> Result<i32, Failure> {
    let cfg = args.config.config()?;
    let mut moments = BTreeMap::new();
    for k in 0..=args.max_order {
        moments.insert(k, moment(cfg, k)?);
    }
    write_json(out, &MomentsReport { config: cfg, moments })?;
    Ok(0)
}

fn cmd_fit_beta<W: Write>(args: &ConfigArgs, out: &mut W) -> Result<i32, Failure> {
    write_json(out, &fit_beta_scenario(args.config()?)?)?;
    Ok(0)
}

fn cmd_simulate<W: Write>(args: &SimulateArgs, out: &mut W) -> Result<i32, Failure> {
    let cfg = args.config.config()?;
    let sim = simulate_detailed(cfg, args.n as usize, args.seed, args.bins as usize, args.threads)?;
    if let Some(path) = &args.hist_out {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "bin_lo,bin_hi,count")?;
        let h = &sim.summary.histogram;
        for (k, count) in h.counts.iter().enumerate() {
            let (lo, hi) = h.edges(k);
            writeln!(w, "{},{},{count}", format_number(lo), format_number(hi))?;
        }
        w.flush()?;
    }
    write_json(out, &sim.summary)?;
    Ok(0)
}

fn cmd_validate<W: Write, E: Write>(args: &ValidateArgs, out: &mut W, err: &mut E) -> Result<i32, Failure> {
    let configs = if args.all {
        NetworkConfig::reference_set()
    } else {
        let c = ConfigArgs {
            dim: args.dim.unwrap_or_default(),
            scenario: args.scenario.unwrap_or(Scenario::S1),
            r1: args.r1.unwrap_or_default(),
            r2: args.r2.unwrap_or_default(),
        };
        vec![c.config()?]
    };
    let opts =
        ValidationOptions { n: args.n as usize, seed: args.seed, threads: args.threads, skip_monte_carlo: false };
    let report = validate_configs(&configs, &opts)?;
    emit_report(&report, out, err)
}

fn emit_report<W: Write, E: Write>(report: &ValidationReport, out: &mut W, err: &mut E) -> Result<i32, Failure> {
    write_json(out, report)?;
    for (cfg, name) in report.failing_checks() {
        writeln!(err, "FAILED {name} for {cfg}")?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_rwp<W: Write>(args: &RwpArgs, out: &mut W) -> Result<i32, Failure> {
    let dim = Dimension::from_degree(args.dim).ok_or(Error::InvalidConfig(format!("dim {}", args.dim)))?;
    let report = rwp_density_crosscheck(dim, args.radius, args.n as usize, args.seed, args.threads)?;
    write_json(out, &report)?;
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Pdf(a) => cmd_pdf(a, out),
        Command::Cdf(a) => cmd_cdf(a, out),
        Command::Moments(a) => cmd_moments(a, out),
        Command::FitBeta(a) => cmd_fit_beta(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Validate(a) => cmd_validate(a, out, err),
        Command::RwpCheck(a) => cmd_rwp(a, out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
