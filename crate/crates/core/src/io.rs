//! File formats: divisor and data-vector JSON, report JSON, CSV tables.
//!
//! Divisor file:
//!
//! ```json
//! {"alpha": 1.0, "points": [{"re": 0.0, "im": 0.0, "mult": 3}]}
//! ```
//!
//! Values file (one entry per label, divisor order, `k` ascending):
//!
//! ```json
//! {"values": [{"re": 1.0, "im": 0.0}]}
//! ```
//!
//! Reports round every float to 12 significant digits and keep field order, so
//! identical inputs give byte-identical output.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::FockError;
use crate::fock::FockParams;
use crate::geometry::{Divisor, DivisorEntry, MergedPoint};
use crate::numerics::SpectralSummary;

/// Significant digits of every float in reports and CSV tables.
pub const REPORT_DIGITS: usize = 12;

/// Malformed input: what went wrong and where.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemaError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schema error")?;
        if let Some(field) = &self.field {
            write!(f, " in field `{field}`")?;
        }
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " at line {l}, column {c}")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for SchemaError {}

impl SchemaError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            line: None,
            column: None,
            field: Some(field.into()),
        }
    }

    fn from_json(e: serde_json::Error) -> Self {
        Self {
            message: e.to_string(),
            line: Some(e.line()),
            column: Some(e.column()),
            field: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub re: f64,
    pub im: f64,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub alpha: f64,
    pub points: Vec<PointRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuesFile {
    pub values: Vec<ComplexRecord>,
}

impl DivisorFile {
    pub fn from_divisor(x: &Divisor) -> Self {
        Self {
            alpha: x.params().alpha(),
            points: x
                .entries()
                .iter()
                .map(|e| PointRecord {
                    re: e.lambda.re,
                    im: e.lambda.im,
                    mult: e.mult as i64,
                })
                .collect(),
        }
    }

    /// Validate and build the divisor, merging coincident points.
    pub fn into_divisor(self) -> Result<(Divisor, Vec<MergedPoint>), SchemaError> {
        let params = FockParams::new(self.alpha).map_err(|_| {
            SchemaError::field("alpha", format!("must be positive, got {}", self.alpha))
        })?;
        let mut entries = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            if p.mult < 1 {
                return Err(SchemaError::field(
                    format!("points[{i}].mult"),
                    format!("must be a positive integer, got {}", p.mult),
                ));
            }
            entries.push(DivisorEntry {
                lambda: Complex64::new(p.re, p.im),
                mult: p.mult as usize,
            });
        }
        Divisor::merging(params, entries).map_err(|e| SchemaError::field("points", e.to_string()))
    }
}

pub fn parse_divisor(text: &str) -> Result<(Divisor, Vec<MergedPoint>), SchemaError> {
    let file: DivisorFile = serde_json::from_str(text).map_err(SchemaError::from_json)?;
    file.into_divisor()
}

/// Pretty JSON with full float precision, so re-ingestion is exact.
pub fn divisor_to_json(x: &Divisor) -> String {
    let mut s = serde_json::to_string_pretty(&DivisorFile::from_divisor(x)).expect("plain data");
    s.push('\n');
    s
}

pub fn parse_values(text: &str) -> Result<Vec<Complex64>, SchemaError> {
    let file: ValuesFile = serde_json::from_str(text).map_err(SchemaError::from_json)?;
    Ok(file
        .values
        .iter()
        .map(|v| Complex64::new(v.re, v.im))
        .collect())
}

pub fn values_to_json(values: &[Complex64]) -> String {
    let file = ValuesFile {
        values: values
            .iter()
            .map(|v| ComplexRecord { re: v.re, im: v.im })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data");
    s.push('\n');
    s
}

/// Round to [`REPORT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", REPORT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Number as it appears in CSV tables; non-finite values are spelled out.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        let r = round_sig(x);
        serde_json::Number::from_f64(r)
            .map(|n| n.to_string())
            .unwrap_or_default()
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if !n.is_i64() && !n.is_u64() {
                    *v = serde_json::Number::from_f64(round_sig(x))
                        .map_or(Value::Null, Value::Number);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Render a report: floats rounded, non-finite values as `null`, fields in
/// insertion order, trailing newline.
pub fn render_report(mut report: Value) -> String {
    round_value(&mut report);
    let mut s = serde_json::to_string_pretty(&report).expect("plain data");
    s.push('\n');
    s
}

/// CSV with header `N,smin,smax,ratio`.
pub fn sweep_csv(rows: &[SpectralSummary]) -> String {
    let mut s = String::from("N,smin,smax,ratio\n");
    for r in rows {
        let n = r.degree.map(|d| d.to_string()).unwrap_or_default();
        s.push_str(&format!(
            "{n},{},{},{}\n",
            format_number(r.smin),
            format_number(r.smax),
            format_number(r.ratio)
        ));
    }
    s
}

/// CSV with header `re,im`.
pub fn points_csv(points: &[Complex64]) -> String {
    let mut s = String::from("re,im\n");
    for z in points {
        s.push_str(&format!(
            "{},{}\n",
            format_number(z.re),
            format_number(z.im)
        ));
    }
    s
}

/// Errors surfaced by the command-line tool, with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input file (exit code 2).
    Schema { path: String, error: SchemaError },
    /// Valid input, but an experiment precondition fails (exit code 3).
    Precondition(FockError),
    /// Filesystem trouble (exit code 1).
    Io { path: String, error: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } => 2,
            CliError::Precondition(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema { path, error } => write!(f, "{path}: {error}"),
            CliError::Precondition(e) => write!(f, "precondition failed: {e}"),
            CliError::Io { path, error } => write!(f, "{path}: {error}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<FockError> for CliError {
    fn from(e: FockError) -> Self {
        CliError::Precondition(e)
    }
}
