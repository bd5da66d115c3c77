//! The `ccs` command-line front end.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing check, 2 on
//! usage or domain errors.

pub mod config;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::error::{CcsError, Result};
use crate::moments;
use crate::states::{alpha_from_tau, tau_from_alpha, temperature_from_alpha, AlphaState, ThermalSpec};

pub use config::{OutputFormat, RunConfig, Settings};
pub use report::{PlotRow, StateReport, SweepRow, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ccs", version, about = "Correlated coherent states of a quantum oscillator")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Oscillator frequency
    #[arg(long, global = true)]
    pub omega: Option<f64>,
    /// Wavefunction stiffness; defaults to omega and must equal it
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    /// Boltzmann constant
    #[arg(long = "kb", global = true)]
    pub k_b: Option<f64>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Overrides every verification tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// key=value settings file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write output to a file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments and uncertainty report of a single state
    State(StateArgs),
    /// Table of observables over a uniform temperature grid
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
    /// Run the numerical oracle suite against the closed forms
    Verify {
        /// Largest phase angle of the verification grid
        #[arg(long, default_value_t = 1.4)]
        alpha_max: f64,
    },
    /// Phase-plane uncertainty squares for a list of temperatures
    PlotData {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        temperatures: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct StateArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub temperature: Option<f64>,
}

/// The state selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Selector {
    Alpha(f64),
    Tau(f64),
    Temperature(f64),
}

impl From<StateArgs> for Selector {
    fn from(a: StateArgs) -> Self {
        match (a.alpha, a.tau, a.temperature) {
            (Some(x), _, _) => Selector::Alpha(x),
            (_, Some(x), _) => Selector::Tau(x),
            (_, _, Some(x)) => Selector::Temperature(x),
            _ => unreachable!("clap enforces exactly one selector"),
        }
    }
}

pub fn cmd_state(selector: Selector, cfg: &RunConfig) -> Result<StateReport> {
    let c = cfg.constants;
    let (state, temperature) = match selector {
        Selector::Alpha(alpha) => {
            let state = AlphaState::new(alpha, cfg.gamma, c)?;
            (state, None)
        }
        Selector::Tau(tau) => {
            if !(tau.is_finite() && tau >= 0.0) {
                return Err(CcsError::Domain(format!("tau must be a non-negative number, got {tau}")));
            }
            (AlphaState::new(alpha_from_tau(tau), cfg.gamma, c)?, None)
        }
        Selector::Temperature(t) => {
            let spec = ThermalSpec::new(t, cfg.omega, c)?;
            (AlphaState::from_thermal(&spec)?, Some(t))
        }
    };
    let temperature = match temperature {
        Some(t) => t,
        None if state.alpha() == 0.0 => 0.0,
        None => temperature_from_alpha(&state, cfg.omega)?,
    };
    let spec = ThermalSpec::new(temperature, cfg.omega, c)?;
    let (mean_kinetic, mean_potential) = moments::mean_kinetic_potential(&spec);
    Ok(StateReport {
        parameters: report::Parameters {
            alpha: state.alpha(),
            tau: tau_from_alpha(state.alpha())?,
            temperature,
            omega: cfg.omega,
            gamma: cfg.gamma,
            hbar: c.hbar(),
            k_b: c.k_b(),
        },
        moments: moments::moment_set(&state),
        uncertainty: moments::sur_report(&state),
        thermal: report::ThermalSummary {
            planck_energy: moments::planck_energy(&spec),
            mean_kinetic,
            mean_potential,
            square: moments::phase_plane_square(&spec),
        },
    })
}

pub fn cmd_sweep(t_min: f64, t_max: f64, steps: usize, cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    if !(t_min.is_finite() && t_max.is_finite() && 0.0 <= t_min && t_min < t_max) {
        return Err(CcsError::Domain(format!(
            "temperature range must satisfy 0 <= t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if steps < 2 {
        return Err(CcsError::Domain(format!("steps must be at least 2, got {steps}")));
    }
    let span = t_max - t_min;
    let last = (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let t = if i + 1 == steps { t_max } else { t_min + span * i as f64 / last };
            SweepRow::at(&ThermalSpec::new(t, cfg.omega, cfg.constants)?)
        })
        .collect()
}

pub fn cmd_verify(cfg: &RunConfig, alpha_max: f64) -> Result<VerifyReport> {
    if !(alpha_max.is_finite() && alpha_max >= 0.0) {
        return Err(CcsError::Domain(format!("alpha must lie in [0, pi/2), got {alpha_max}")));
    }
    // Fails early with the usual domain message when alpha_max is out of range.
    AlphaState::new(alpha_max, cfg.gamma, cfg.constants)?;
    verify::run_suite(cfg, alpha_max)
}

pub fn cmd_plot_data(temperatures: &[f64], cfg: &RunConfig) -> Result<Vec<PlotRow>> {
    temperatures
        .iter()
        .map(|&t| Ok(PlotRow::at(&ThermalSpec::new(t, cfg.omega, cfg.constants)?)))
        .collect()
}

/// Result of a CLI invocation: exit code plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn resolve(cli: &Cli) -> Result<RunConfig> {
    let flags = Settings {
        omega: cli.omega,
        gamma: cli.gamma,
        hbar: cli.hbar,
        k_b: cli.k_b,
        format: cli.format,
        tol: cli.tol,
    };
    let file = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    RunConfig::resolve(&flags.over(file))
}

fn execute(cli: &Cli) -> Result<(i32, String, String)> {
    let cfg = resolve(cli)?;
    let json = cfg.format == OutputFormat::Json;
    Ok(match &cli.command {
        Command::State(args) => {
            let r = cmd_state((*args).into(), &cfg)?;
            (EXIT_OK, if json { report::to_json(&r) } else { r.csv() }, String::new())
        }
        Command::Sweep { t_min, t_max, steps } => {
            let rows = cmd_sweep(*t_min, *t_max, *steps, &cfg)?;
            (EXIT_OK, if json { report::to_json(&rows) } else { report::sweep_csv(&rows) }, String::new())
        }
        Command::Verify { alpha_max } => {
            let r = cmd_verify(&cfg, *alpha_max)?;
            let text = if json { report::to_json(&r) } else { r.csv() };
            if r.passed {
                (EXIT_OK, text, String::new())
            } else {
                let failed: Vec<String> = r
                    .failures()
                    .map(|c| format!("{} (worst error {:e} > {:e})", c.check, c.worst_error, c.tolerance))
                    .collect();
                (EXIT_VERIFY_FAILED, text, format!("verification failed: {}\n", failed.join(", ")))
            }
        }
        Command::PlotData { temperatures } => {
            let rows = cmd_plot_data(temperatures, &cfg)?;
            (EXIT_OK, if json { report::to_json(&rows) } else { report::plot_csv(&rows) }, String::new())
        }
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout, stderr)) => match &cli.output {
            Some(path) => match fs::write(path, &stdout) {
                Ok(()) => Outcome { code, stdout: String::new(), stderr },
                Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
            },
            None => Outcome { code, stdout, stderr },
        },
        Err(e) => Outcome::usage(e),
    }
}
