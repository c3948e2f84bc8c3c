//! The `fracdim` command-line tool as a library, so it can be driven from
//! tests without spawning a process.

pub mod args;
mod commands;
pub mod config;
pub mod output;

use clap::Parser;
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use args::{Cli, Format};
use config::ConfigFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {}", .0.name(), .0)]
    Library(#[from] fracdim::Error),
    /// A check ran but missed its tolerance.
    #[error("{0}")]
    CheckFailed(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_VALIDATION,
            CliError::Library(e) if e.is_validation() => EXIT_VALIDATION,
            CliError::Library(_) | CliError::CheckFailed(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

/// Options shared by every command.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Globals {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

/// Parse `argv`, run the command and write its output. Returns the process
/// exit code; diagnostics go to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let config = match &cli.global.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let name = cli.command.name();
    let section = config.section(name);
    let globals: Globals = config::resolve(&section, &cli.global)?;
    if let Some(t) = globals.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be finite and > 0, got {t}")));
        }
    }
    log::info!("running {name}");
    let outcome = commands::dispatch(&cli.command, &section, &globals)?;
    let mut buf = Vec::new();
    outcome.report.write(globals.format, &mut buf)?;
    match &globals.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => stdout.write_all(&buf)?,
    }
    if let Some(msg) = outcome.failure {
        return Err(CliError::CheckFailed(msg));
    }
    Ok(EXIT_OK)
}

/// Convenience for tests: run and capture stdout and stderr as strings.
pub fn run_captured<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 output"),
        String::from_utf8(err).expect("utf-8 diagnostics"),
    )
}
