//! The `wirtinger` command-line interface.
//!
//! Usage: `wirtinger <command> --config <path> [--output <path>]
//! [--format csv|json] [--seed <u64>] [--tol <float>]`. The JSON job file
//! is the single source of truth for a run; the flags override its
//! `output`, `format`, `seed`, and classification-tolerance fields. The
//! subcommand on the command line must match the `command` field of the
//! job file.

pub mod config;
pub mod expr;
pub mod output;
pub mod run;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cli::config::{CommandKind, JobConfig, OutputFormat, ToleranceConfig};
use crate::error::Error;

#[derive(Debug, Parser)]
#[command(
    name = "wirtinger",
    version,
    about = "Kähler angles, Wirtinger's inequality, and almost-complex structure fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Audit a compatible structure and print its diagnostics
    ValidateStructure(JobArgs),
    /// Compute the angle report of one oriented subspace
    Angle(JobArgs),
    /// Sweep a chart over its grid and tabulate the angle field
    Scan(JobArgs),
    /// Run a randomized Wirtinger-inequality battery
    Verify(JobArgs),
    /// Probe a structure field's Nijenhuis tensor
    Nijenhuis(JobArgs),
}

impl Command {
    fn kind(&self) -> CommandKind {
        match self {
            Command::ValidateStructure(_) => CommandKind::ValidateStructure,
            Command::Angle(_) => CommandKind::Angle,
            Command::Scan(_) => CommandKind::Scan,
            Command::Verify(_) => CommandKind::Verify,
            Command::Nijenhuis(_) => CommandKind::Nijenhuis,
        }
    }

    fn args(&self) -> &JobArgs {
        match self {
            Command::ValidateStructure(args)
            | Command::Angle(args)
            | Command::Scan(args)
            | Command::Verify(args)
            | Command::Nijenhuis(args) => args,
        }
    }
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Path of the JSON job description
    #[arg(long)]
    pub config: PathBuf,

    /// Write the result here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Output format for scan results
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Override the job's random seed
    #[arg(long)]
    pub seed: Option<u64>,

    /// Override the classification tolerance
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(format: FormatArg) -> OutputFormat {
        match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Parses the command line, runs the job, and returns the process exit
/// code: 0 success, 1 configuration or input errors, 2 a mathematical
/// check failed, 3 numerical breakdown.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here as non-errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("wirtinger: {e}");
            e.exit_code()
        }
    }
}

/// Loads the job file, applies flag overrides, and executes.
pub fn dispatch(cli: &Cli) -> crate::error::Result<i32> {
    let args = cli.command.args();
    let mut config = JobConfig::load(&args.config)?;
    let kind = cli.command.kind();
    if config.command != kind {
        return Err(Error::Config(format!(
            "job file says `{}` but the command line says `{}`",
            config.command.name(),
            kind.name()
        )));
    }
    if let Some(path) = &args.output {
        config.output = Some(path.clone());
    }
    if let Some(format) = args.format {
        config.format = Some(format.into());
    }
    if let Some(seed) = args.seed {
        config.seed = Some(seed);
    }
    if let Some(tol) = args.tol {
        config
            .tolerances
            .get_or_insert(ToleranceConfig::default())
            .classification = Some(tol);
    }
    run::execute(&config)
}
