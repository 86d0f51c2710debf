//! Command-line flags.

use super::config::{
    parse_number, DirectionInput, Fault, OutputFormat, RawConfig, Scalar, SweepInput, ToleranceInput, UsageError,
    ValuesInput,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "spinpair", version, about = "Compound spin-1/2 states, observables and expectation values")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Assemble a compound state over the intermediate bases.
    State(Flags),
    /// Build the observable pair over the intermediate bases.
    Operator(Flags),
    /// Joint outcome probabilities along the measured axes.
    Probabilities(Flags),
    /// Expectation value through both routes, with a basis-invariance check.
    Expect(Flags),
    /// Run the invariant suite.
    Verify(Flags),
    /// Sweep one input and report the expectation value at each point.
    Scan(Flags),
}

impl CliCommand {
    fn split(self) -> (&'static str, Flags) {
        match self {
            CliCommand::State(f) => ("state", f),
            CliCommand::Operator(f) => ("operator", f),
            CliCommand::Probabilities(f) => ("probabilities", f),
            CliCommand::Expect(f) => ("expect", f),
            CliCommand::Verify(f) => ("verify", f),
            CliCommand::Scan(f) => ("scan", f),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FaultArg {
    KernelSign,
}

/// Directions are `theta,phi`, radians unless suffixed with `deg`.
/// Outcome values are `plus,minus`.
#[derive(Debug, Args)]
pub struct Flags {
    /// Total spin, 0 or 1.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Projection along the compound axis.
    #[arg(long = "M", allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Compound axis (default z).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Intermediate basis for subsystem 1 (default z).
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Intermediate basis for subsystem 2 (default z).
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Measured axis for subsystem 1.
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<String>,
    /// Measured axis for subsystem 2.
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<String>,
    /// Outcome values for subsystem 1 (default 1,-1).
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<String>,
    /// Outcome values for subsystem 2 (default 1,-1).
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with the same fields; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Swept input, e.g. c2.theta or r1.plus.
    #[arg(long)]
    pub param: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: Option<String>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub tol_kernel: Option<String>,
    #[arg(long)]
    pub tol_expectation: Option<String>,
    #[arg(long)]
    pub tol_spectrum: Option<String>,
    #[arg(long)]
    pub tol_standard_limit: Option<String>,
    #[arg(long)]
    pub tol_imaginary: Option<String>,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

fn integer(s: &Option<String>, field: &str) -> Result<Option<i32>, UsageError> {
    s.as_deref()
        .map(|t| {
            let t = t.trim();
            t.strip_prefix('+')
                .unwrap_or(t)
                .parse::<i32>()
                .map_err(|_| UsageError::new(field, format!("malformed integer `{t}`")))
        })
        .transpose()
}

fn tolerance(s: &Option<String>, field: &str) -> Result<Option<f64>, UsageError> {
    s.as_deref().map(|t| parse_number(t, field)).transpose()
}

impl Flags {
    /// Flag values as a config layer, plus the config file path and fault.
    pub fn into_raw(self, command: &str) -> Result<(RawConfig, Option<PathBuf>, Option<Fault>), UsageError> {
        let raw = RawConfig {
            command: Some(command.to_string()),
            s: integer(&self.s, "s")?,
            m: integer(&self.m, "M")?,
            a: self.a.map(DirectionInput::Text),
            d: self.d.map(DirectionInput::Text),
            f: self.f.map(DirectionInput::Text),
            c1: self.c1.map(DirectionInput::Text),
            c2: self.c2.map(DirectionInput::Text),
            r1: self.r1.map(ValuesInput::Text),
            r2: self.r2.map(ValuesInput::Text),
            format: self.format.map(|f| match f {
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Csv => OutputFormat::Csv,
            }),
            seed: self.seed,
            sweep: SweepInput {
                param: self.param,
                start: self.start.map(Scalar::Text),
                stop: self.stop.map(Scalar::Text),
                steps: self.steps,
            },
            tolerances: ToleranceInput {
                kernel: tolerance(&self.tol_kernel, "tol-kernel")?,
                expectation: tolerance(&self.tol_expectation, "tol-expectation")?,
                spectrum: tolerance(&self.tol_spectrum, "tol-spectrum")?,
                standard_limit: tolerance(&self.tol_standard_limit, "tol-standard-limit")?,
                imaginary: tolerance(&self.tol_imaginary, "tol-imaginary")?,
            },
        };
        let fault = self.inject_fault.map(|FaultArg::KernelSign| Fault::KernelSign);
        Ok((raw, self.config, fault))
    }
}

impl Cli {
    pub fn into_parts(self) -> Result<(RawConfig, Option<PathBuf>, Option<Fault>), UsageError> {
        let (name, flags) = self.command.split();
        flags.into_raw(name)
    }
}
