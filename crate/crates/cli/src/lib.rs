//! Command-line front end: parse, validate, compute, then emit.
//!
//! Exit codes: 0 on success, 1 for validation errors, 2 for computation
//! (and output) errors. Errors go to stderr as `error[<class>] <detail>`.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod plot;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Config;
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "milgrowth",
    version,
    about = "Military burden, demand multipliers and growth scenarios"
)]
pub struct Cli {
    /// Output format for the primary result.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// TOML file with preset overrides and defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write the primary result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Short-run equilibrium output and the military spending multiplier.
    Demand(DemandArgs),
    /// Productivity and growth at one regime.
    Growth(GrowthArgs),
    /// Growth over a range of military burdens.
    Sweep(SweepArgs),
    /// Growth-maximizing military burden.
    Optimize(OptimizeArgs),
    /// Partial derivatives of the growth rate.
    Statics(StaticsArgs),
    /// Peace/war trajectories, the peace/war growth table, counterfactual losses.
    Scenario(ScenarioArgs),
    /// Solve for a0, or for (phi, chi), from target growth rates.
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Args)]
pub struct DemandArgs {
    #[arg(long)]
    pub c0: Option<f64>,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub i0: Option<f64>,
    #[arg(long)]
    pub i1: Option<f64>,
    #[arg(long)]
    pub i2: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long = "g-c")]
    pub g_c: Option<f64>,
    #[arg(long = "g-m")]
    pub g_m: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[arg(long, default_value = "baseline")]
    pub preset: String,
    #[arg(long, allow_negative_numbers = true)]
    pub m: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub d: f64,
    /// Half-width of the near-optimum band.
    #[arg(long, default_value_t = milgrowth_core::analysis::DEFAULT_CLASSIFY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// One or more presets, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "baseline")]
    pub preset: Vec<String>,
    #[arg(long = "m-min", allow_negative_numbers = true)]
    pub m_min: Option<f64>,
    #[arg(long = "m-max", allow_negative_numbers = true)]
    pub m_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Also write an SVG chart of the sweep here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// With --plot, write the chart's backing CSV instead of SVG.
    #[arg(long = "data-only", requires = "plot")]
    pub data_only: bool,
    /// Extra vertical marker lines on the chart.
    #[arg(long = "marker", value_delimiter = ',')]
    pub markers: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_delimiter = ',', default_value = "baseline")]
    pub preset: Vec<String>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub d: f64,
    /// Cross-check against a brute-force grid search at 1e-5 spacing.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct StaticsArgs {
    #[arg(long, value_delimiter = ',', default_value = "baseline")]
    pub preset: Vec<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleKind {
    Peace,
    War,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[arg(long, value_delimiter = ',', default_value = "us,iran")]
    pub preset: Vec<String>,
    /// Periods (years) to simulate.
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Peace and war growth per country.
    #[arg(long, conflicts_with = "counterfactual")]
    pub table3: bool,
    /// Output lost relative to a peace path.
    #[arg(long)]
    pub counterfactual: bool,
    /// Regime for plain trajectories.
    #[arg(long, value_enum, default_value_t = ScheduleKind::War)]
    pub schedule: ScheduleKind,
    /// Length of the war before peace resumes (default: whole horizon).
    #[arg(long = "war-periods")]
    pub war_periods: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CalibrationTarget {
    A0,
    Innovation,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, value_enum)]
    pub target: CalibrationTarget,
    /// Preset supplying the parameters that are held fixed.
    #[arg(long, default_value = "baseline")]
    pub preset: String,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub a0: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub chi: Option<f64>,
    /// Target observation `m:g` or `m:g:d`; repeat for two observations.
    #[arg(long = "obs", allow_negative_numbers = true)]
    pub observations: Vec<String>,
}

/// What a command produced, held in memory until everything succeeded.
#[derive(Debug, Default)]
pub struct Output {
    pub primary: String,
    pub files: Vec<(PathBuf, Vec<u8>)>,
}

fn execute(cli: Cli) -> Result<Output> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let mut out = match &cli.command {
        Command::Demand(a) => commands::demand(&config, a, cli.format)?,
        Command::Growth(a) => commands::growth(&config, a, cli.format)?,
        Command::Sweep(a) => commands::sweep(&config, a, cli.format)?,
        Command::Optimize(a) => commands::optimize(&config, a, cli.format)?,
        Command::Statics(a) => commands::statics(&config, a, cli.format)?,
        Command::Scenario(a) => commands::scenario(&config, a, cli.format)?,
        Command::Calibrate(a) => commands::calibrate(&config, a, cli.format)?,
    };
    if let Some(path) = &cli.out {
        out.files.insert(
            0,
            (path.clone(), std::mem::take(&mut out.primary).into_bytes()),
        );
    }
    Ok(out)
}

/// Runs the CLI with explicit streams. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stdout, "{}", e.render());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        1
                    } else {
                        0
                    }
                }
                _ => {
                    let msg = e.render().to_string();
                    let first = msg
                        .lines()
                        .next()
                        .unwrap_or("")
                        .trim_start_matches("error: ");
                    let _ = writeln!(stderr, "{}", CliError::validation("argv", first).report());
                    1
                }
            };
        }
    };

    let result = execute(cli).and_then(|out| {
        for (path, bytes) in &out.files {
            std::fs::write(path, bytes).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
        stdout
            .write_all(out.primary.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            })
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.report());
            e.exit_code()
        }
    }
}
