//! `regge`: phase shifts, Regge poles and verification suites from a TOML config.

mod commands;
mod config;
mod output;
mod svg;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use commands::Context;
use config::RunConfig;
use output::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(regge_scatter::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "regge", version, about = "Complex angular momentum scattering: phase shifts, Regge poles, identity checks")]
struct Cli {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// SVG scatter of located and predicted poles (poles only).
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Tolerance override: verification threshold, or Newton tolerance for poles.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Phase shifts over an l range, with the edge-envelope ratio.
    PhaseShifts,
    /// Regge poles in a first-quadrant rectangle.
    Poles,
    /// Lambert-W pole predictions for compactly supported potentials.
    PredictPoles,
    /// Run named invariant suites; exit status 1 if any check fails.
    Verify {
        /// Suites to run (default: config list, else all).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// The gap functional F(r, nu) for two potentials.
    UniquenessGap,
    /// Tabulate a special function.
    SpecfunTable,
}

fn load_config(path: Option<&PathBuf>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::defaults()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            RunConfig::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Table, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    let config = load_config(cli.config.as_ref())?;
    let ctx = Context::new(config, cli.tol)?;
    match &cli.command {
        Command::PhaseShifts => commands::cmd_phase_shifts(&ctx),
        Command::Poles => {
            let (t, svg) = commands::cmd_poles(&ctx)?;
            if let Some(p) = &cli.svg {
                std::fs::write(p, svg).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            }
            Ok(t)
        }
        Command::PredictPoles => commands::cmd_predict_poles(&ctx),
        Command::Verify { suites } => {
            let list = if suites.is_empty() { ctx.config.verify.suites.clone() } else { suites.clone() };
            verify::run(&ctx, &list)
        }
        Command::UniquenessGap => commands::cmd_uniqueness_gap(&ctx),
        Command::SpecfunTable => commands::cmd_specfun_table(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let table = match run(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("regge: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = match cli.format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
    };
    if let Err(e) = write_out(cli.out.as_ref(), &text) {
        eprintln!("regge: {e}");
        return ExitCode::from(e.exit_code());
    }
    if table.passed == Some(false) {
        eprintln!("regge: verification failed");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
