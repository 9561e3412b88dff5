//! `matsusy`: catalog queries, identity checks, spectra and eigenstates.
//!
//! Exit status: 0 all checks passed, 1 usage or configuration error,
//! 2 a verification tolerance was violated, 3 a computation failed.

mod commands;
mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Command, Format, Settings};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(matsusy_core::Error),
    Io(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Core(e) => e.name(),
            CliError::Io(_) => "IoError",
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(_) | CliError::Io(_) => 3,
        }
    }

    fn detail(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

impl From<matsusy_core::Error> for CliError {
    fn from(e: matsusy_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(
    name = "matsusy",
    version,
    about = "Matrix shape-invariant superpotentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Common {
    /// JSON file with the same keys as the flags; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
}

use clap::Args;

#[derive(Subcommand)]
enum Sub {
    /// Print the family catalog.
    List(Common),
    /// Check parameters and branch availability.
    Validate(Common),
    /// Shape-invariance, factorization and intertwining checks.
    VerifySi(Common),
    /// Analytic against finite-difference spectrum.
    Spectrum(Common),
    /// Ground state on a grid.
    Ground(Common),
    /// Ladder-built excited state (--n).
    Excited(Common),
    /// Matrix spectrum against its scalar partner pair.
    Isospectral(Common),
    /// Spectrum comparison over a parameter range.
    Sweep(Common),
}

impl Sub {
    fn split(self) -> (Command, Common) {
        match self {
            Sub::List(c) => (Command::List, c),
            Sub::Validate(c) => (Command::Validate, c),
            Sub::VerifySi(c) => (Command::VerifySi, c),
            Sub::Spectrum(c) => (Command::Spectrum, c),
            Sub::Ground(c) => (Command::Ground, c),
            Sub::Excited(c) => (Command::Excited, c),
            Sub::Isospectral(c) => (Command::Isospectral, c),
            Sub::Sweep(c) => (Command::Sweep, c),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn meta_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn execute(command: Command, common: Common) -> Result<bool, CliError> {
    let settings = match &common.config {
        Some(path) => common.settings.over(config::read_config(path)?),
        None => common.settings,
    };
    let cfg = config::resolve(command, settings)?;
    let outcome = commands::run(&cfg)?;
    let body = match cfg.format {
        Format::Json => pretty(&outcome.report),
        Format::Csv => outcome
            .csv
            .clone()
            .expect("csv support is checked during resolution"),
    };
    match &cfg.out {
        Some(path) => {
            write_file(path, &body)?;
            if cfg.format == Format::Csv {
                let meta = outcome.meta.as_ref().unwrap_or(&outcome.report);
                write_file(&meta_path(path), &pretty(meta))?;
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    if let Some(path) = &cfg.plot {
        write_file(
            path,
            outcome
                .plot
                .as_deref()
                .expect("plot support is checked during resolution"),
        )?;
    }
    if let Some(m) = &outcome.message {
        eprintln!("{}: {m}", command.name());
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, common) = cli.command.split();
    match execute(command, common) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {}: {}", e.name(), e.detail());
            ExitCode::from(e.code())
        }
    }
}
