//! Machine-readable results: the JSON check report and fixed-precision CSV.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A float written with 17 significant digits so that it round-trips;
/// non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Num(Num),
    Int(i64),
    Str(String),
    Bool(bool),
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Num(Num(v))
    }
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<u32> for Param {
    fn from(v: u32) -> Self {
        Param::Int(v as i64)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Str(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Str(v)
    }
}

impl From<bool> for Param {
    fn from(v: bool) -> Self {
        Param::Bool(v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub lhs: Num,
    pub rhs: Num,
    pub abs_err: Num,
    pub rel_err: Num,
}

impl Check {
    /// Numeric comparison; passes when the relative error is within `tol`.
    pub fn close(id: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let abs_err = (lhs - rhs).abs();
        let rel_err = if rhs == 0.0 { abs_err } else { abs_err / rhs.abs() };
        Check {
            id: id.into(),
            pass: rel_err <= tol,
            lhs: Num(lhs),
            rhs: Num(rhs),
            abs_err: Num(abs_err),
            rel_err: Num(rel_err),
        }
    }

    /// Absolute comparison against `tol`.
    pub fn within(id: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut c = Check::close(id, lhs, rhs, f64::INFINITY);
        c.pass = c.abs_err.0 <= tol;
        c
    }

    /// Exact check; `residual` counts surviving terms and must be 0.
    pub fn exact(id: impl Into<String>, residual: usize) -> Self {
        let r = residual as f64;
        Check {
            id: id.into(),
            pass: residual == 0,
            lhs: Num(r),
            rhs: Num(0.0),
            abs_err: Num(r),
            rel_err: Num(r),
        }
    }

    /// A yes/no property, reported as 1 for true.
    pub fn flag(id: impl Into<String>, holds: bool) -> Self {
        let v = if holds { 1.0 } else { 0.0 };
        Check {
            id: id.into(),
            pass: holds,
            lhs: Num(v),
            rhs: Num(1.0),
            abs_err: Num(1.0 - v),
            rel_err: Num(1.0 - v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
}

pub type Row = BTreeMap<String, Param>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub command: String,
    pub params: BTreeMap<String, Param>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: BTreeMap<String, Param>) -> Self {
        Report {
            tool_version: TOOL_VERSION,
            command: command.into(),
            params,
            checks: Vec::new(),
            summary: Summary { total: 0, passed: 0 },
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.summary.total += 1;
        self.summary.passed += usize::from(c.pass);
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `{:.11e}`: 12 significant digits.
pub fn csv_float(v: f64) -> String {
    format!("{v:.11e}")
}

/// Write `header` and `rows` as CSV.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}
