//! The `smtl` command line.

pub mod charts;
pub mod commands;
pub mod exit;
pub mod input;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use smtl_core::formula::Level;
use smtl_core::time::Rational;
use smtl_core::SemanticsMode;

pub use exit::{CliError, ExitStatus};

#[derive(Debug, Parser)]
#[command(name = "smtl", version, about = "Stratified metric temporal logic toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula, check stratum nesting and optionally lint interval
    /// bounds against level resolutions.
    Check {
        formula: PathBuf,
        /// Per-level resolutions, e.g. `1=0.01,2=1,3=60`.
        #[arg(long, value_parser = input::parse_resolutions)]
        resolutions: Option<std::collections::BTreeMap<Level, Rational>>,
        /// Level the formula is evaluated at.
        #[arg(long, default_value_t = 1)]
        base_level: Level,
    },
    /// Evaluate a formula on a trace file.
    Eval {
        formula: PathBuf,
        trace: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: Level,
        #[arg(long, default_value_t = 0)]
        position: usize,
        /// `strict` or `scoped`.
        #[arg(long, default_value = "strict")]
        mode: SemanticsMode,
        /// Evaluation engine: `table` or `oracle`.
        #[arg(long, default_value = "table")]
        engine: String,
    },
    /// Print the stratum-free translation of an MTL formula, or `NotMTL`.
    Translate { formula: PathBuf },
    /// Built-in demonstrations.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Run the gridworld experiment described by a JSON config.
    Sim {
        config: PathBuf,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Also write per-run trajectory logs.
        #[arg(long)]
        trajectories: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Check the no-shared-cell property on trajectory logs.
    VerifyTrajectories {
        log_dir: PathBuf,
        /// Horizon T (default: each run's max_steps).
        #[arg(long)]
        horizon: Option<u64>,
        /// `smtl`, `mtl` or `all`.
        #[arg(long, default_value = "smtl")]
        policy: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// Two signals differing at one sample, separated by a stratified formula.
    Separating {
        #[arg(long, default_value = "0.3", value_parser = input::parse_positive_rational)]
        radius: Rational,
        #[arg(long, default_value = "0.1", value_parser = input::parse_positive_rational)]
        step: Rational,
        /// Directory for the two demo traces and the formula.
        #[arg(long)]
        write_traces: Option<PathBuf>,
    },
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitStatus, CliError> {
    match &cli.command {
        Command::Check { formula, resolutions, base_level } => {
            commands::logic::check(formula, resolutions.as_ref(), *base_level, out)
        }
        Command::Eval { formula, trace, level, position, mode, engine } => commands::logic::eval(
            &commands::logic::EvalArgs { formula, trace, level: *level, position: *position, mode: *mode, engine },
            out,
        ),
        Command::Translate { formula } => commands::logic::translate(formula, out),
        Command::Demo { demo: Demo::Separating { radius, step, write_traces } } => {
            commands::demo::separating(radius, step, write_traces.as_deref(), out)
        }
        Command::Sim { config, out: dir, trajectories, workers } => {
            commands::sim::sim(config, dir, *trajectories, *workers, out, err)
        }
        Command::VerifyTrajectories { log_dir, horizon, policy } => {
            commands::verify::verify_trajectories(log_dir, *horizon, policy, out)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    ExitStatus::Success
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    ExitStatus::Usage
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status()
        }
    }
}
