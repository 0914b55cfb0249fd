//! Verification reports and the canonical JSON form shared with operator
//! files: object keys sorted, floats printed like C's `%.17g`, non-finite
//! floats written as `null`, compact separators and a trailing newline.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::matkernel::Tolerances;

/// `%.17g`: shortest of fixed or exponent notation with 17 significant
/// digits, trailing zeros removed. Round-trips every finite `f64`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                match n.as_f64() {
                    Some(x) if x.is_finite() => out.push_str(&format_g17(x)),
                    _ => out.push_str("null"),
                }
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_canonical(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (k, key) in keys.into_iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push(':');
                write_canonical(&map[key], out);
            }
            out.push('}');
        }
    }
}

pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_canonical(v, &mut out);
    out.push('\n');
    out
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    canonical_json(&serde_json::to_value(value).expect("serializable value"))
}

/// Hex SHA-256 of the canonical JSON bytes.
pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(canonical_json(v).as_bytes()))
}

/// Serde adapter writing non-finite floats as `null` and reading `null` back
/// as `NaN`.
mod float_or_null {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    #[serde(with = "float_or_null")]
    pub residual: f64,
    #[serde(with = "float_or_null")]
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Passes when `residual <= tolerance`; a `NaN` residual fails.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// A yes/no property: residual 0 when it holds, 1 when it fails,
    /// tolerance 0.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub tolerances: Tolerances,
}

impl Environment {
    pub fn new(tolerances: Tolerances) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            tolerances,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub checks: Vec<CheckRecord>,
    pub environment: Environment,
    /// Informational values that are not pass/fail checks.
    pub summary: BTreeMap<String, Value>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: Vec<String>, input_digest: Option<String>, tolerances: Tolerances) -> Self {
        Self {
            command,
            input_digest,
            checks: Vec::new(),
            environment: Environment::new(tolerances),
            summary: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
        self.finalize();
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("serializable summary value");
        self.summary.insert(key.into(), value);
    }

    /// Sorts checks by name (stable for equal names) and recomputes the
    /// overall flag.
    pub fn finalize(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,residual,tolerance,pass\n");
        let fmt = |x: f64| if x.is_finite() { format_g17(x) } else { "nan".into() };
        for c in &self.checks {
            let _ = writeln!(out, "{},{},{},{}", c.name, fmt(c.residual), fmt(c.tolerance), c.pass);
        }
        out
    }
}
