use std::fmt::Write as _;

use clap::ValueEnum;
use ntopo::topology::{write_trace_csv, TraceRow};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

const SIGNIFICANT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Indented summary with rounded values.
    Text,
    /// The full report with raw values.
    Json,
    /// Raw values; traces as `k,subset,value`, everything else as `key,value`.
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the canonical inputs: command arguments, resolved
    /// configuration, seed and trial count.
    pub inputs_digest: String,
    pub seed: u64,
    pub results: Value,
    pub failures: Vec<Value>,
    #[serde(skip)]
    pub trace: Option<Vec<TraceRow<f64>>>,
}

pub fn digest(inputs: &Value) -> String {
    // Field order is fixed by the code that builds `inputs`, so equal inputs
    // always encode to the same bytes.
    let bytes = serde_json::to_vec(inputs).unwrap_or_default();
    hex::encode(Sha256::digest(&bytes))
}

impl Report {
    pub fn render(&self, format: Format, zero: f64) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Text => Ok(render_text(self, zero).into_bytes()),
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(self)
                    .map_err(|e| CliError::Usage(format!("cannot encode report: {e}")))?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut out = Vec::new();
        if let Some(rows) = &self.trace {
            write_trace_csv(rows, &mut out)?;
            return Ok(out);
        }
        let mut flat = Vec::new();
        flatten("", &self.results, &mut flat);
        for (i, f) in self.failures.iter().enumerate() {
            flatten(&format!("failures.{i}"), f, &mut flat);
        }
        let mut w = csv::Writer::from_writer(&mut out);
        let csv_err = |e: csv::Error| CliError::Usage(format!("cannot write csv: {e}"));
        w.write_record(["key", "value"]).map_err(csv_err)?;
        for (k, v) in flat {
            w.write_record([k, v]).map_err(csv_err)?;
        }
        w.flush()
            .map_err(|e| CliError::Usage(format!("cannot write csv: {e}")))?;
        drop(w);
        Ok(out)
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// `%.12g`: twelve significant digits, trailing zeros dropped.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let Some((mantissa, exp)) = sci.split_once('e') else {
        return sci;
    };
    let exp: i32 = exp.parse().unwrap_or(0);
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn scalar(v: &Value, key: &str, zero: f64) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let x = if key.contains("residual") && x.abs() < zero {
                0.0
            } else {
                x
            };
            Some(fmt_g(x))
        }
        Value::Number(n) => Some(n.to_string()),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::Array(_) | Value::Object(_) => None,
                _ => scalar(x, key, zero),
            })
            .collect::<Option<Vec<_>>>()
            .map(|parts| format!("[{}]", parts.join(", "))),
        Value::Object(map) if map.is_empty() => Some("{}".into()),
        Value::Object(_) => None,
    }
}

fn write_block(out: &mut String, v: &Value, key: &str, depth: usize, zero: f64) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x, k, zero) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        write_block(out, x, k, depth + 1, zero);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x, key, zero) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let mut inner = String::new();
                        write_block(&mut inner, x, key, depth + 1, zero);
                        let body = inner.get(pad.len() + 2..).unwrap_or_default();
                        let _ = write!(out, "{pad}- {body}");
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other, key, zero).unwrap_or_default());
        }
    }
}

pub fn render_text(report: &Report, zero: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    let _ = writeln!(out, "inputs: sha256:{}", report.inputs_digest);
    let _ = writeln!(out, "seed: {}", report.seed);
    match scalar(&report.results, "", zero) {
        Some(s) => {
            let _ = writeln!(out, "results: {s}");
        }
        None => {
            out.push_str("results:\n");
            write_block(&mut out, &report.results, "", 1, zero);
        }
    }
    if report.failures.is_empty() {
        out.push_str("failures: none\n");
    } else {
        let _ = writeln!(out, "failures: {}", report.failures.len());
        write_block(
            &mut out,
            &Value::Array(report.failures.clone()),
            "",
            1,
            zero,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_g(6.0), "6");
        assert_eq!(fmt_g(-0.0), "0");
        assert_eq!(fmt_g(0.1 + 0.2), "0.3");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(123456789012.0), "123456789012");
        assert_eq!(fmt_g(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt_g(2.5e-20), "2.5e-20");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_g(f64::INFINITY), "inf");
    }

    #[test]
    fn residuals_round_to_zero_only_in_text() {
        let report = Report {
            command: "quotient".into(),
            inputs_digest: digest(&json!({})),
            seed: 0,
            results: json!({"norm": 3e-12, "residual": 4e-17}),
            failures: vec![],
            trace: None,
        };
        let text = render_text(&report, 1e-9);
        assert!(text.contains("  norm: 3e-12\n"), "{text}");
        assert!(text.contains("  residual: 0\n"), "{text}");
        let csv = String::from_utf8(report.render(Format::Csv, 1e-9).unwrap()).unwrap();
        assert!(csv.contains("residual,4e-17"), "{csv}");
    }

    #[test]
    fn nested_text_layout() {
        let report = Report {
            command: "x".into(),
            inputs_digest: "ab".into(),
            seed: 1,
            results: json!({"rows": [{"k": 1, "v": 0.5}], "gram": [[1.0, 0.0], [0.0, 1.0]]}),
            failures: vec![],
            trace: None,
        };
        let text = render_text(&report, 1e-9);
        assert_eq!(
            text,
            "command: x\ninputs: sha256:ab\nseed: 1\nresults:\n  rows:\n    - k: 1\n      v: 0.5\n  gram:\n    - [1, 0]\n    - [0, 1]\nfailures: none\n"
        );
    }
}
