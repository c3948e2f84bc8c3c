//! One module per subcommand. Each resolves its parameter record, runs the
//! library and fills a [`Report`].

mod beam;
mod integrate;
mod measure;
mod operators;
mod poisson;
mod validate;

use serde_json::{Map, Value};

use crate::args::{BeamCommand, Command};
use crate::output::Report;
use crate::{CliError, Globals};

pub struct Outcome {
    pub report: Report,
    /// Set when the command ran but a check missed its tolerance.
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self { report, failure: None }
    }
}

pub fn dispatch(command: &Command, config: &Map<String, Value>, globals: &Globals) -> Result<Outcome, CliError> {
    match command {
        Command::Measure(a) => measure::run(a, config, globals),
        Command::Integrate(a) => integrate::run(a, config, globals),
        Command::Operators(a) => operators::run(a, config, globals),
        Command::Poisson(a) => poisson::run(a, config, globals),
        Command::Beam(BeamCommand::Modes(a)) => beam::modes(a, config, globals),
        Command::Beam(BeamCommand::Simulate(a)) => beam::simulate(a, config, globals),
        Command::Validate(a) => validate::run(a, config, globals),
    }
}

/// Attribute a library error to a flag: input errors become usage errors
/// naming the flag, numerical failures pass through.
pub(crate) fn flag<T>(name: &str, r: fracdim::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| {
        if e.is_validation() {
            CliError::Usage(format!("--{name}: {e}"))
        } else {
            CliError::Library(e)
        }
    })
}

pub(crate) fn usage(name: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("--{name}: {msg}"))
}

pub(crate) fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(name, format!("must be finite and > 0, got {v}")))
    }
}
