//! Command-line flags. Every parameter flag is optional so that a config
//! file can supply it; defaults live in the parameter records.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "fracdim", version, about = "Calculus and mechanics in non-integer dimensional spaces")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct GlobalArgs {
    /// JSON file with parameter values; flags take precedence
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ball volumes, sphere areas, effective coordinates and masses
    Measure(MeasureArgs),
    /// Product-measure and radial integrals of named integrands
    Integrate(IntegrateArgs),
    /// Differential operators on a named test field
    Operators(OperatorsArgs),
    /// One-dimensional Poisson problems
    Poisson(PoissonArgs),
    /// Fractal cantilever beams
    #[command(subcommand)]
    Beam(BeamCommand),
    /// Run the identity and closed-form suite
    Validate(ValidateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Measure(_) => "measure",
            Command::Integrate(_) => "integrate",
            Command::Operators(_) => "operators",
            Command::Poisson(_) => "poisson",
            Command::Beam(BeamCommand::Modes(_)) => "beam-modes",
            Command::Beam(BeamCommand::Simulate(_)) => "beam-simulate",
            Command::Validate(_) => "validate",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum BeamCommand {
    /// Frequencies and mode shapes
    Modes(BeamModesArgs),
    /// Timoshenko time integration
    Simulate(BeamSimulateArgs),
}

fn is_false(b: &bool) -> bool {
    !*b
}

pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(out)
}

pub fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated numbers, got {s:?}"));
    }
    let a = parts[0].parse().map_err(|_| format!("not a number: {:?}", parts[0]))?;
    let b = parts[1].parse().map_err(|_| format!("not a number: {:?}", parts[1]))?;
    Ok([a, b])
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct MeasureArgs {
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<[f64; 3]>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// Point at which effective coordinates and the weight are evaluated
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<[f64; 3]>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho0: Option<f64>,
    /// ball-volume, sphere-area, effective-coordinate, weight, mass or all
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct IntegrateArgs {
    /// gaussian, exp-decay, polynomial or angular
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrand: Option<String>,
    /// Total dimension D, split evenly over the three axes
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<f64>,
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<[f64; 3]>,
    /// Half-width of the integration box (upper edge for polynomial)
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extent: Option<f64>,
    /// Add a Monte Carlo cross-check (needs --seed)
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    pub mc: bool,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct OperatorsArgs {
    /// Test field name
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<[f64; 3]>,
    /// Number of scattered evaluation points
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Coordinate range of the points, as lo,hi
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
    /// A single evaluation point x,y,z (overrides --points)
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<[f64; 3]>,
    /// Report the identity suite instead of operator values
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    pub verify: bool,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct PoissonArgs {
    /// news or k2
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Source term: const, linear or sin
    #[arg(long = "f")]
    #[serde(skip_serializing_if = "Option::is_none", rename = "f")]
    pub source: Option<String>,
    /// Interval a,b with 0 < a < b
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    /// Dirichlet values at a and b
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc: Option<[f64; 2]>,
    /// analytic, numeric or both
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    /// Number of output samples
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct MaterialArgs {
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
    /// Young modulus
    #[arg(long = "e", allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    /// Second moment of the cross-section
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_d: Option<f64>,
    /// Shear coefficient
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    /// Shear modulus
    #[arg(long = "g", allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct BeamModesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub material: MaterialArgs,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// Samples per mode shape
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Emit mode shapes (x, X(x), w_n) instead of the frequency table
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    pub shapes: bool,
    /// Use the literal argument k x^alpha with k = z/L instead of k X(x)
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    pub paper_literal: bool,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct BeamSimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub material: MaterialArgs,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<usize>,
    /// Time step; defaults to 1/200 of the first modal period
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Mode used as the initial displacement
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<usize>,
    /// Record every n-th step
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ValidateArgs {
    /// Monte Carlo samples for the Gaussian cross-check
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}
