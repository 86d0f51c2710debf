//! Output records and their JSON Lines / CSV encodings.
//!
//! Numbers are written in shortest round-trip form, so every `f64` parses
//! back to the identical value.

use super::config::{OutputFormat, RunConfig};
use crate::tolerance::Tolerances;
use serde::Serialize;
use serde_json::{Map, Value};
use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub version: &'static str,
    pub seed: u64,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub inputs: Value,
    pub payload: Value,
    pub metadata: Metadata,
}

pub fn inputs_echo(config: &RunConfig) -> Value {
    let mut m = Map::new();
    m.insert("label".into(), serde_json::to_value(config.label).unwrap_or(Value::Null));
    m.insert("spec".into(), serde_json::to_value(config.spec).unwrap_or(Value::Null));
    let (d, f) = config.intermediates;
    m.insert("d".into(), serde_json::to_value(d).unwrap_or(Value::Null));
    m.insert("f".into(), serde_json::to_value(f).unwrap_or(Value::Null));
    m.insert("sweep".into(), serde_json::to_value(config.sweep).unwrap_or(Value::Null));
    Value::Object(m)
}

fn is_number_pair(items: &[Value]) -> bool {
    items.len() == 2 && items.iter().all(Value::is_number)
}

/// Flatten nested objects to dotted column names. Two-element numeric
/// arrays are complex numbers and become `_re` / `_im` columns; other arrays
/// are indexed.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into(value, String::new(), &mut out);
    out
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn flatten_into(value: &Value, prefix: String, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten_into(v, join(&prefix, k), out);
            }
        }
        Value::Array(items) if is_number_pair(items) => {
            out.push((format!("{prefix}_re"), items[0].to_string()));
            out.push((format!("{prefix}_im"), items[1].to_string()));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(v, join(&prefix, &i.to_string()), out);
            }
        }
        Value::Null => out.push((prefix, String::new())),
        Value::String(s) => out.push((prefix, s.clone())),
        other => out.push((prefix, other.to_string())),
    }
}

pub fn write_records<W: Write>(records: &[OutputRecord], format: OutputFormat, out: &mut W) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
            Ok(())
        }
        OutputFormat::Csv => write_csv(records, out),
    }
}

fn write_csv<W: Write>(records: &[OutputRecord], out: &mut W) -> io::Result<()> {
    let rows: Vec<Vec<(String, String)>> = records
        .iter()
        .map(|r| serde_json::to_value(r).map(|v| flatten(&v)))
        .collect::<Result<_, _>>()?;
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let header: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&header)?;
    for row in &rows {
        let cells = header.iter().map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()));
        w.write_record(cells)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_splits_complex_pairs() {
        let v = json!({"a": {"b": [1.5, -0.25]}, "m": [[[1, 0], [0, 1]]], "s": "x", "n": null});
        let flat = flatten(&v);
        let keys: Vec<_> = flat.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["a.b_re", "a.b_im", "m.0.0_re", "m.0.0_im", "m.0.1_re", "m.0.1_im", "s", "n"]);
        assert_eq!(flat[1].1, "-0.25");
    }

    #[test]
    fn numbers_round_trip() {
        let x = 0.1 + 0.2;
        let flat = flatten(&json!({"x": x}));
        assert_eq!(flat[0].1.parse::<f64>().unwrap(), x);
    }
}
