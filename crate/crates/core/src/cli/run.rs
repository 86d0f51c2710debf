//! Command dispatch.

use super::config::{Command, Fault, RunConfig, Sweep, SweepParam};
use super::output::{inputs_echo, Metadata, OutputRecord};
use crate::direction::{CompoundLabel, Direction};
use crate::error::{Error, Result};
use crate::expectation::{expectation_matrix_with_tolerance, expectation_oracle, outcome_probabilities, verify_basis_invariance};
use crate::kernel::set_kernel_fault;
use crate::operators::{operator_pair, MeasurementSpec, OutcomeValues};
use crate::sampling::{cartesian, Sampler};
use crate::states::assemble_state;
use crate::verify::VerificationSuite;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 0;

/// Side length of the `(d, f)` grid used by `expect`.
pub const EXPECT_GRID_SIDE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

pub struct RunOutput {
    pub records: Vec<OutputRecord>,
    pub status: Status,
    /// Human-readable lines for stderr.
    pub summary: Vec<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize infallibly")
}

pub fn run(config: &RunConfig) -> Result<RunOutput> {
    if config.fault == Some(Fault::KernelSign) {
        set_kernel_fault(true);
    }
    let out = dispatch(config);
    if config.fault.is_some() {
        set_kernel_fault(false);
    }
    out
}

fn dispatch(config: &RunConfig) -> Result<RunOutput> {
    let seed = config.seed.unwrap_or(DEFAULT_SEED);
    let record = |payload: Value| OutputRecord {
        command: config.command.name(),
        inputs: inputs_echo(config),
        payload,
        metadata: Metadata { version: env!("CARGO_PKG_VERSION"), seed, tolerances: config.tolerances },
    };
    let single = |payload: Value| RunOutput { records: vec![record(payload)], status: Status::Success, summary: vec![] };
    let (d, f) = config.intermediates;
    // required fields are checked when the config is resolved
    let label = config.label.as_ref();
    let spec = config.spec.as_ref();

    match config.command {
        Command::State => Ok(single(to_value(&assemble_state(required(label)?, d, f)))),
        Command::Operator => {
            let pair = operator_pair(required(spec)?, d, f);
            Ok(single(json!({ "r1": pair.r1, "r2": pair.r2, "joint": pair.kron() })))
        }
        Command::Probabilities => {
            let spec = required(spec)?;
            let p = outcome_probabilities(required(label)?, spec.c1, spec.c2);
            Ok(single(json!({ "probabilities": p, "total": p.total() })))
        }
        Command::Expect => {
            let (label, spec) = (required(label)?, required(spec)?);
            let mut sampler = Sampler::new(seed);
            let mut ds = vec![d];
            let mut fs = vec![f];
            ds.extend((1..EXPECT_GRID_SIDE).map(|_| sampler.direction()));
            fs.extend((1..EXPECT_GRID_SIDE).map(|_| sampler.direction()));
            // imaginary residue at the user's own (d, f) under the configured tolerance
            expectation_matrix_with_tolerance(label, spec, d, f, config.tolerances.imaginary)?;
            let report = verify_basis_invariance(label, spec, &cartesian(&ds, &fs))?;
            Ok(single(to_value(&report)))
        }
        Command::Verify => {
            let suite = VerificationSuite::new(seed, config.tolerances);
            let outcomes = suite.run();
            let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
            let mut summary = vec![format!(
                "verify: {}/{} checks passed (seed {seed})",
                outcomes.len() - failed.len(),
                outcomes.len()
            )];
            for o in &failed {
                let mut line = format!("  FAILED {}: max residual {:e} > tolerance {:e}", o.check, o.max_residual, o.tolerance);
                if !o.error.is_empty() {
                    line.push_str(&format!(" ({})", o.error));
                }
                summary.push(line);
            }
            let status = if failed.is_empty() { Status::Success } else { Status::VerificationFailed };
            let records = outcomes.iter().map(|o| record(to_value(o))).collect();
            Ok(RunOutput { records, status, summary })
        }
        Command::Scan => {
            let (label, spec) = (*required(label)?, *required(spec)?);
            let sweep = *required(config.sweep.as_ref())?;
            let imaginary = config.tolerances.imaginary;
            let payloads = sweep
                .values()
                .into_par_iter()
                .enumerate()
                .map(|(i, x)| scan_point(&sweep, i, x, label, spec, (d, f), imaginary))
                .collect::<Result<Vec<_>>>()?;
            let records = payloads.into_iter().map(record).collect();
            Ok(RunOutput { records, status: Status::Success, summary: vec![] })
        }
    }
}

fn required<T>(v: Option<&T>) -> Result<&T> {
    v.ok_or_else(|| Error::Precondition("run configuration was not validated".into()))
}

fn set_theta(d: Direction, theta: f64) -> Result<Direction> {
    Direction::new(theta, d.phi())
}

fn set_phi(d: Direction, phi: f64) -> Result<Direction> {
    Direction::new(d.theta(), phi)
}

fn scan_point(
    sweep: &Sweep,
    index: usize,
    x: f64,
    mut label: CompoundLabel,
    mut spec: MeasurementSpec,
    (mut d, mut f): (Direction, Direction),
    imaginary: f64,
) -> Result<Value> {
    use SweepParam::*;
    match sweep.param {
        ATheta => label = label.with_axis(set_theta(label.axis(), x)?),
        APhi => label = label.with_axis(set_phi(label.axis(), x)?),
        DTheta => d = set_theta(d, x)?,
        DPhi => d = set_phi(d, x)?,
        FTheta => f = set_theta(f, x)?,
        FPhi => f = set_phi(f, x)?,
        C1Theta => spec.c1 = set_theta(spec.c1, x)?,
        C1Phi => spec.c1 = set_phi(spec.c1, x)?,
        C2Theta => spec.c2 = set_theta(spec.c2, x)?,
        C2Phi => spec.c2 = set_phi(spec.c2, x)?,
        R1Plus => spec.values1 = OutcomeValues::new(x, spec.values1.minus())?,
        R1Minus => spec.values1 = OutcomeValues::new(spec.values1.plus(), x)?,
        R2Plus => spec.values2 = OutcomeValues::new(x, spec.values2.minus())?,
        R2Minus => spec.values2 = OutcomeValues::new(spec.values2.plus(), x)?,
    }
    let matrix = expectation_matrix_with_tolerance(&label, &spec, d, f, imaginary)?;
    let oracle = expectation_oracle(&label, &spec);
    Ok(json!({
        "index": index,
        "parameter": sweep.param.name(),
        "value": x,
        "expectation": matrix,
        "expectation_oracle": oracle,
        "residual": (matrix - oracle).abs(),
        "probabilities": outcome_probabilities(&label, spec.c1, spec.c2),
    }))
}
