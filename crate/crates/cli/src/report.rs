use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: u32 = 1;

/// C-style `%.12e`, `null` for non-finite values.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    let s = format!("{x:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mant}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

pub fn num(x: f64) -> Box<RawValue> {
    RawValue::from_string(fmt_float(x)).expect("formatted float is valid JSON")
}

#[derive(Debug, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub value: Box<RawValue>,
    pub target: Box<RawValue>,
    pub rel_err: Box<RawValue>,
    pub pass: bool,
}

impl CaseResult {
    pub fn new(case: impl Into<String>, value: f64, target: f64, rel_err: f64, pass: bool) -> Self {
        Self { case: case.into(), value: num(value), target: num(target), rel_err: num(rel_err), pass }
    }

    /// Relative comparison, absolute when the target is zero.
    pub fn close(case: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        let err = rel_err(value, target);
        Self::new(case, value, target, err, err <= tol)
    }
}

pub fn rel_err(value: f64, target: f64) -> f64 {
    if target == 0.0 {
        value.abs()
    } else {
        ((value - target) / target).abs()
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub results: Vec<CaseResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Box<RawValue>>,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl RunReport {
    pub fn new(check: &str, params: BTreeMap<String, String>, results: Vec<CaseResult>) -> Self {
        let pass = results.iter().all(|r| r.pass);
        Self { schema_version: SCHEMA_VERSION, check: check.into(), params, results, details: None, pass, runtime_ms: 0 }
    }

    pub fn with_details<T: Serialize>(mut self, details: &T) -> Self {
        let s = serde_json::to_string(details).expect("details serialize");
        self.details = Some(RawValue::from_string(s).expect("valid JSON"));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["case", "value", "target", "rel_err", "pass"])?;
        for r in &self.results {
            w.write_record([
                r.case.as_str(),
                r.value.get(),
                r.target.get(),
                r.rel_err.get(),
                if r.pass { "true" } else { "false" },
            ])?;
        }
        w.flush()
    }
}
