//! Run configuration: command-line flags layered over an optional JSON file.

use crate::direction::{CompoundLabel, Direction};
use crate::operators::{MeasurementSpec, OutcomeValues};
use crate::tolerance::Tolerances;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    State,
    Operator,
    Probabilities,
    Expect,
    Verify,
    Scan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::State => "state",
            Command::Operator => "operator",
            Command::Probabilities => "probabilities",
            Command::Expect => "expect",
            Command::Verify => "verify",
            Command::Scan => "scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Deliberate corruptions used to exercise the failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    KernelSign,
}

/// A bad flag or config entry. `field` names the offending input.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError {
    pub field: String,
    pub message: String,
}

impl UsageError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for UsageError {}

type Parsed<T> = std::result::Result<T, UsageError>;

/// Sweepable scalar inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    #[serde(rename = "a.theta")]
    ATheta,
    #[serde(rename = "a.phi")]
    APhi,
    #[serde(rename = "d.theta")]
    DTheta,
    #[serde(rename = "d.phi")]
    DPhi,
    #[serde(rename = "f.theta")]
    FTheta,
    #[serde(rename = "f.phi")]
    FPhi,
    #[serde(rename = "c1.theta")]
    C1Theta,
    #[serde(rename = "c1.phi")]
    C1Phi,
    #[serde(rename = "c2.theta")]
    C2Theta,
    #[serde(rename = "c2.phi")]
    C2Phi,
    #[serde(rename = "r1.plus")]
    R1Plus,
    #[serde(rename = "r1.minus")]
    R1Minus,
    #[serde(rename = "r2.plus")]
    R2Plus,
    #[serde(rename = "r2.minus")]
    R2Minus,
}

impl SweepParam {
    const ALL: [(SweepParam, &'static str); 14] = [
        (SweepParam::ATheta, "a.theta"),
        (SweepParam::APhi, "a.phi"),
        (SweepParam::DTheta, "d.theta"),
        (SweepParam::DPhi, "d.phi"),
        (SweepParam::FTheta, "f.theta"),
        (SweepParam::FPhi, "f.phi"),
        (SweepParam::C1Theta, "c1.theta"),
        (SweepParam::C1Phi, "c1.phi"),
        (SweepParam::C2Theta, "c2.theta"),
        (SweepParam::C2Phi, "c2.phi"),
        (SweepParam::R1Plus, "r1.plus"),
        (SweepParam::R1Minus, "r1.minus"),
        (SweepParam::R2Plus, "r2.plus"),
        (SweepParam::R2Minus, "r2.minus"),
    ];

    pub fn parse(s: &str) -> Parsed<Self> {
        Self::ALL.iter().find(|(_, n)| *n == s).map(|(p, _)| *p).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|(_, n)| *n).collect();
            UsageError::new("param", format!("unknown sweep parameter `{s}` (expected one of {})", names.join(", ")))
        })
    }

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(p, _)| *p == self).map(|(_, n)| *n).unwrap_or("?")
    }

    pub fn is_angle(self) -> bool {
        !matches!(self, SweepParam::R1Plus | SweepParam::R1Minus | SweepParam::R2Plus | SweepParam::R2Minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sweep {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Sweep {
    /// `start + i (stop − start) / (steps − 1)` for `i = 0..steps`.
    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.start + span * i as f64 / last).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub label: Option<CompoundLabel>,
    pub spec: Option<MeasurementSpec>,
    pub intermediates: (Direction, Direction),
    pub sweep: Option<Sweep>,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub fault: Option<Fault>,
}

/// A scalar written as a number or a string; strings may carry a unit.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Scalar {
    fn angle(&self, field: &str) -> Parsed<f64> {
        match self {
            Scalar::Number(x) => Ok(*x),
            Scalar::Text(s) => parse_angle(s, field),
        }
    }

    fn plain(&self, field: &str) -> Parsed<f64> {
        match self {
            Scalar::Number(x) => Ok(*x),
            Scalar::Text(s) => parse_number(s, field),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum DirectionInput {
    Pair([Scalar; 2]),
    Object { theta: Scalar, phi: Scalar },
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ValuesInput {
    Pair([Scalar; 2]),
    Object { plus: Scalar, minus: Scalar },
    Text(String),
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepInput {
    pub param: Option<String>,
    pub start: Option<Scalar>,
    pub stop: Option<Scalar>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceInput {
    pub kernel: Option<f64>,
    pub expectation: Option<f64>,
    pub spectrum: Option<f64>,
    pub standard_limit: Option<f64>,
    pub imaginary: Option<f64>,
}

/// Unvalidated inputs, from either the config file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub command: Option<String>,
    pub s: Option<i32>,
    #[serde(rename = "M")]
    pub m: Option<i32>,
    pub a: Option<DirectionInput>,
    pub d: Option<DirectionInput>,
    pub f: Option<DirectionInput>,
    pub c1: Option<DirectionInput>,
    pub c2: Option<DirectionInput>,
    pub r1: Option<ValuesInput>,
    pub r2: Option<ValuesInput>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub sweep: SweepInput,
    #[serde(default)]
    pub tolerances: ToleranceInput,
}

fn or<T>(over: Option<T>, base: Option<T>) -> Option<T> {
    over.or(base)
}

impl RawConfig {
    pub fn from_json(text: &str) -> Parsed<Self> {
        serde_json::from_str(text).map_err(|e| UsageError::new("config", e.to_string()))
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(self, base: RawConfig) -> RawConfig {
        RawConfig {
            command: or(self.command, base.command),
            s: or(self.s, base.s),
            m: or(self.m, base.m),
            a: or(self.a, base.a),
            d: or(self.d, base.d),
            f: or(self.f, base.f),
            c1: or(self.c1, base.c1),
            c2: or(self.c2, base.c2),
            r1: or(self.r1, base.r1),
            r2: or(self.r2, base.r2),
            format: or(self.format, base.format),
            seed: or(self.seed, base.seed),
            sweep: SweepInput {
                param: or(self.sweep.param, base.sweep.param),
                start: or(self.sweep.start, base.sweep.start),
                stop: or(self.sweep.stop, base.sweep.stop),
                steps: or(self.sweep.steps, base.sweep.steps),
            },
            tolerances: ToleranceInput {
                kernel: or(self.tolerances.kernel, base.tolerances.kernel),
                expectation: or(self.tolerances.expectation, base.tolerances.expectation),
                spectrum: or(self.tolerances.spectrum, base.tolerances.spectrum),
                standard_limit: or(self.tolerances.standard_limit, base.tolerances.standard_limit),
                imaginary: or(self.tolerances.imaginary, base.tolerances.imaginary),
            },
        }
    }

    pub fn resolve(self, fault: Option<Fault>) -> Parsed<RunConfig> {
        let command = match self.command.as_deref() {
            Some(name) => parse_command(name)?,
            None => return Err(UsageError::new("command", "no command given")),
        };

        let label = match (self.s, self.m) {
            (Some(s), Some(m)) => {
                let axis = direction_field(self.a.as_ref(), "a")?.unwrap_or(Direction::Z);
                Some(CompoundLabel::new(s, m, axis).map_err(|e| UsageError::new("s/M", e.to_string()))?)
            }
            (Some(_), None) => return Err(UsageError::new("M", "required together with s")),
            (None, Some(_)) => return Err(UsageError::new("s", "required together with M")),
            (None, None) => {
                if self.a.is_some() {
                    return Err(UsageError::new("a", "axis given without s and M"));
                }
                None
            }
        };

        let c1 = direction_field(self.c1.as_ref(), "c1")?;
        let c2 = direction_field(self.c2.as_ref(), "c2")?;
        let r1 = values_field(self.r1.as_ref(), "r1")?.unwrap_or(OutcomeValues::spin_projection());
        let r2 = values_field(self.r2.as_ref(), "r2")?.unwrap_or(OutcomeValues::spin_projection());
        let spec = match (c1, c2) {
            (Some(c1), Some(c2)) => Some(MeasurementSpec::new(c1, c2, r1, r2)),
            (Some(_), None) => return Err(UsageError::new("c2", "required together with c1")),
            (None, Some(_)) => return Err(UsageError::new("c1", "required together with c2")),
            (None, None) => None,
        };

        let d = direction_field(self.d.as_ref(), "d")?.unwrap_or(Direction::Z);
        let f = direction_field(self.f.as_ref(), "f")?.unwrap_or(Direction::Z);

        let sweep = resolve_sweep(self.sweep)?;

        let mut tolerances = Tolerances::default();
        let t = self.tolerances;
        for (slot, value, name) in [
            (&mut tolerances.kernel, t.kernel, "tolerances.kernel"),
            (&mut tolerances.expectation, t.expectation, "tolerances.expectation"),
            (&mut tolerances.spectrum, t.spectrum, "tolerances.spectrum"),
            (&mut tolerances.standard_limit, t.standard_limit, "tolerances.standard_limit"),
            (&mut tolerances.imaginary, t.imaginary, "tolerances.imaginary"),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(UsageError::new(name, format!("must be a finite non-negative number, got {v}")));
                }
                *slot = v;
            }
        }

        let config = RunConfig {
            command,
            label,
            spec,
            intermediates: (d, f),
            sweep,
            output_format: self.format.unwrap_or_default(),
            seed: self.seed,
            tolerances,
            fault,
        };
        check_required(&config)?;
        Ok(config)
    }
}

fn parse_command(name: &str) -> Parsed<Command> {
    Ok(match name {
        "state" => Command::State,
        "operator" => Command::Operator,
        "probabilities" => Command::Probabilities,
        "expect" => Command::Expect,
        "verify" => Command::Verify,
        "scan" => Command::Scan,
        other => return Err(UsageError::new("command", format!("unknown command `{other}`"))),
    })
}

fn check_required(c: &RunConfig) -> Parsed<()> {
    let need_label = matches!(c.command, Command::State | Command::Probabilities | Command::Expect | Command::Scan);
    let need_spec = matches!(c.command, Command::Operator | Command::Probabilities | Command::Expect | Command::Scan);
    if need_label && c.label.is_none() {
        return Err(UsageError::new("s/M", format!("`{}` requires a compound label (s and M)", c.command.name())));
    }
    if need_spec && c.spec.is_none() {
        return Err(UsageError::new("c1/c2", format!("`{}` requires measured axes c1 and c2", c.command.name())));
    }
    if c.command == Command::Scan && c.sweep.is_none() {
        return Err(UsageError::new("param", "`scan` requires --param, --start, --stop and --steps"));
    }
    Ok(())
}

fn resolve_sweep(input: SweepInput) -> Parsed<Option<Sweep>> {
    let SweepInput { param, start, stop, steps } = input;
    if param.is_none() && start.is_none() && stop.is_none() && steps.is_none() {
        return Ok(None);
    }
    let param = SweepParam::parse(&param.ok_or_else(|| UsageError::new("param", "missing sweep parameter"))?)?;
    let bound = |v: Option<Scalar>, field: &str| -> Parsed<f64> {
        let v = v.ok_or_else(|| UsageError::new(field, "missing sweep bound"))?;
        let x = if param.is_angle() { v.angle(field)? } else { v.plain(field)? };
        finite(x, field)
    };
    let start = bound(start, "start")?;
    let stop = bound(stop, "stop")?;
    let steps = steps.ok_or_else(|| UsageError::new("steps", "missing sweep step count"))?;
    if steps < 2 {
        return Err(UsageError::new("steps", format!("must be at least 2, got {steps}")));
    }
    Ok(Some(Sweep { param, start, stop, steps }))
}

fn finite(x: f64, field: &str) -> Parsed<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(UsageError::new(field, format!("not a finite number: {x}")))
    }
}

pub fn parse_number(s: &str, field: &str) -> Parsed<f64> {
    let t = s.trim();
    t.parse::<f64>()
        .map_err(|_| UsageError::new(field, format!("malformed number `{t}`")))
        .and_then(|x| finite(x, field))
}

/// Radians by default; a `deg` suffix selects degrees, `rad` is accepted.
pub fn parse_angle(s: &str, field: &str) -> Parsed<f64> {
    let t = s.trim();
    if let Some(num) = t.strip_suffix("deg") {
        Ok(parse_number(num, field)?.to_radians())
    } else if let Some(num) = t.strip_suffix("rad") {
        parse_number(num, field)
    } else {
        parse_number(t, field)
    }
}

fn split_pair<'a>(s: &'a str, field: &str) -> Parsed<(&'a str, &'a str)> {
    let parts: Vec<_> = s.split(',').collect();
    match parts.as_slice() {
        [x, y] => Ok((x, y)),
        _ => Err(UsageError::new(field, format!("expected two comma-separated values, got `{s}`"))),
    }
}

pub fn parse_direction(input: &DirectionInput, field: &str) -> Parsed<Direction> {
    let (tf, pf) = (format!("{field}.theta"), format!("{field}.phi"));
    let (theta, phi) = match input {
        DirectionInput::Pair([t, p]) | DirectionInput::Object { theta: t, phi: p } => (t.angle(&tf)?, p.angle(&pf)?),
        DirectionInput::Text(s) => {
            let (t, p) = split_pair(s, field)?;
            (parse_angle(t, &tf)?, parse_angle(p, &pf)?)
        }
    };
    Direction::new(theta, phi).map_err(|e| UsageError::new(field, e.to_string()))
}

fn direction_field(input: Option<&DirectionInput>, field: &str) -> Parsed<Option<Direction>> {
    input.map(|d| parse_direction(d, field)).transpose()
}

pub fn parse_values(input: &ValuesInput, field: &str) -> Parsed<OutcomeValues> {
    let (pf, mf) = (format!("{field}.plus"), format!("{field}.minus"));
    let (plus, minus) = match input {
        ValuesInput::Pair([p, m]) | ValuesInput::Object { plus: p, minus: m } => (p.plain(&pf)?, m.plain(&mf)?),
        ValuesInput::Text(s) => {
            let (p, m) = split_pair(s, field)?;
            (parse_number(p, &pf)?, parse_number(m, &mf)?)
        }
    };
    OutcomeValues::new(plus, minus).map_err(|e| UsageError::new(field, e.to_string()))
}

fn values_field(input: Option<&ValuesInput>, field: &str) -> Parsed<Option<OutcomeValues>> {
    input.map(|v| parse_values(v, field)).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn angles_accept_degree_suffix() {
        assert_eq!(parse_angle("1.5", "x").unwrap(), 1.5);
        assert!((parse_angle("60deg", "x").unwrap() - FRAC_PI_3).abs() < 1e-15);
        assert!((parse_angle(" 60 deg ", "x").unwrap() - FRAC_PI_3).abs() < 1e-15);
        assert_eq!(parse_angle("2rad", "x").unwrap(), 2.0);
        let e = parse_angle("abc", "c2.theta").unwrap_err();
        assert_eq!(e.field, "c2.theta");
    }

    #[test]
    fn json_direction_shapes() {
        let raw = RawConfig::from_json(
            r#"{"command": "expect", "s": 0, "M": 0, "c1": [0, 0], "c2": {"theta": "60deg", "phi": 0}}"#,
        )
        .unwrap();
        let c = raw.resolve(None).unwrap();
        let spec = c.spec.unwrap();
        assert!((spec.c2.theta() - FRAC_PI_3).abs() < 1e-15);
        assert_eq!(spec.values1, OutcomeValues::spin_projection());
    }

    #[test]
    fn override_prefers_flags() {
        let file = RawConfig { seed: Some(1), s: Some(1), ..Default::default() };
        let flags = RawConfig { seed: Some(2), ..Default::default() };
        let merged = flags.over(file);
        assert_eq!(merged.seed, Some(2));
        assert_eq!(merged.s, Some(1));
    }

    #[test]
    fn missing_fields_are_named() {
        let raw = RawConfig { command: Some("expect".into()), s: Some(0), m: Some(0), ..Default::default() };
        assert_eq!(raw.resolve(None).unwrap_err().field, "c1/c2");

        let raw = RawConfig { command: Some("state".into()), s: Some(1), ..Default::default() };
        assert_eq!(raw.resolve(None).unwrap_err().field, "M");

        let raw = RawConfig { command: Some("state".into()), s: Some(2), m: Some(0), ..Default::default() };
        assert_eq!(raw.resolve(None).unwrap_err().field, "s/M");
    }

    #[test]
    fn sweep_validation() {
        let mut raw = RawConfig {
            command: Some("scan".into()),
            s: Some(0),
            m: Some(0),
            c1: Some(DirectionInput::Text("0,0".into())),
            c2: Some(DirectionInput::Text("0,0".into())),
            ..Default::default()
        };
        raw.sweep = SweepInput {
            param: Some("c2.theta".into()),
            start: Some(Scalar::Number(0.0)),
            stop: Some(Scalar::Text("180deg".into())),
            steps: Some(1),
        };
        assert_eq!(raw.clone().resolve(None).unwrap_err().field, "steps");
        raw.sweep.steps = Some(3);
        let sweep = raw.clone().resolve(None).unwrap().sweep.unwrap();
        assert_eq!(sweep.values(), vec![0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI]);
        raw.sweep.param = Some("c3.theta".into());
        assert_eq!(raw.resolve(None).unwrap_err().field, "param");
    }

    #[test]
    fn unknown_config_key_rejected() {
        assert!(RawConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }
}
