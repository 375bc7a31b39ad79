//! `relbound` — bound sweeps, single-speed reports, config-driven error
//! propagation, and a self-verification suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid computation,
//! 3 verification failure.

mod commands;
mod config;
mod error;
mod output;
mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use relbound_core::UnitMode;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::verify::Suite;

#[derive(Parser)]
#[command(
    name = "relbound",
    version,
    about = "Relativistic uncertainty bounds and first-order error propagation"
)]
struct Cli {
    /// Unit system for hbar and c
    #[arg(long, value_enum, default_value_t = UnitsArg::Natural, global = true)]
    units: UnitsArg,

    /// Override hbar after --units is applied
    #[arg(long, global = true, allow_negative_numbers = true)]
    hbar: Option<f64>,

    /// Override the speed of light after --units is applied
    #[arg(long, global = true, allow_negative_numbers = true)]
    c: Option<f64>,

    /// Table output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    format: FormatArg,

    /// Write the table to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for Monte Carlo sampling and randomized checks
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,

    /// Monte Carlo sample count
    #[arg(long, default_value_t = 1_000_000, global = true)]
    samples: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate zeta and the uncertainty bounds over a uniform beta grid
    ZetaSweep {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta_min: f64,
        #[arg(long, default_value_t = 0.99, allow_negative_numbers = true)]
        beta_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Report every bound at a single speed
    Bounds {
        /// Speed as a fraction of c
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Timing window; adds the minimum energy-spread column
        #[arg(long, allow_negative_numbers = true)]
        dt: Option<f64>,
    },
    /// Evaluate a function from a config file and propagate its sigma
    Propagate {
        /// Path to a `key = value` config file
        config: PathBuf,
        /// Cross-check the propagated sigma by Monte Carlo
        #[arg(long)]
        mc: bool,
    },
    /// Run named self-checks; exits 3 if any fail
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitsArg {
    Natural,
    Si,
}

impl From<UnitsArg> for UnitMode {
    fn from(u: UnitsArg) -> Self {
        match u {
            UnitsArg::Natural => UnitMode::Natural,
            UnitsArg::Si => UnitMode::Si,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Propagation,
    Inequalities,
    Identity,
    Limits,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Propagation => Suite::Propagation,
            SuiteArg::Inequalities => Suite::Inequalities,
            SuiteArg::Identity => Suite::Identity,
            SuiteArg::Limits => Suite::Limits,
            SuiteArg::All => Suite::All,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = RunConfig::resolve(
        cli.units.into(),
        cli.hbar,
        cli.c,
        cli.format.into(),
        cli.output,
        cli.seed,
        cli.samples,
    )?;
    let table = match cli.command {
        Command::ZetaSweep {
            beta_min,
            beta_max,
            steps,
        } => commands::zeta_sweep(beta_min, beta_max, steps, &config)?,
        Command::Bounds { beta, dt } => commands::bounds(beta, dt, &config)?,
        Command::Propagate { config: path, mc } => commands::propagate(&path, mc, &config)?,
        Command::Verify { suite } => {
            verify::run_suite(suite.into(), &config)?;
            return Ok(());
        }
    };
    output::emit(&table, &config)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version print to stdout and succeed; everything
            // else is a usage error.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(i32::from(e.exit_code()));
    }
}
