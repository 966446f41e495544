//! Check results and their deterministic emission as JSON, text or CSV.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named verification outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            detail: detail.into(),
        }
    }

    /// A numeric check that passes iff `residual < tol` (NaN fails).
    pub fn numeric(name: impl Into<String>, residual: f64, tol: f64, detail: impl Into<String>) -> Self {
        let ok = residual < tol;
        Check {
            residual: Some(residual),
            ..Check::new(name, ok, detail)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A suite of checks for one parameter value.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub p: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>, p: u32) -> Self {
        Report {
            suite: suite.into(),
            p,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parameter(format!("unknown format {s:?}"))),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders a report. Output depends only on the report contents.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        Format::Text => {
            let mut out = format!("suite {} (p = {})\n", r.suite, r.p);
            for c in &r.checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                let res = c.residual.map(|x| format!(" [residual {x:.3e}]")).unwrap_or_default();
                let _ = writeln!(out, "{tag} {}{res}: {}", c.name, c.detail);
            }
            let failed = r.failures().count();
            let _ = writeln!(out, "{} checks, {} failed", r.checks.len(), failed);
            out
        }
        Format::Csv => {
            let mut out = String::from("suite,p,name,status,residual,detail\n");
            for c in &r.checks {
                let status = if c.passed() { "pass" } else { "fail" };
                let res = c.residual.map(|x| format!("{x:e}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{status},{res},{}",
                    csv_field(&r.suite),
                    r.p,
                    csv_field(&c.name),
                    csv_field(&c.detail)
                );
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_empty_checks() {
        let r = Report::new("all", 2);
        let s = emit_report(&r, Format::Json);
        assert!(s.contains("\"checks\": []"));
        assert!(r.all_passed());
    }

    #[test]
    fn failing_check_is_marked() {
        let mut r = Report::new("modular", 3);
        r.push(Check::new("ratio (X0_1, P+_1)", false, "lhs 1/2 vs rhs 1/3"));
        let s = emit_report(&r, Format::Json);
        assert!(s.contains("\"status\": \"fail\""));
        assert!(s.contains("lhs 1/2 vs rhs 1/3"));
        assert!(!r.all_passed());
        assert!(emit_report(&r, Format::Csv).contains("\"ratio (X0_1, P+_1)\""));
    }

    #[test]
    fn emission_is_deterministic() {
        let mut r = Report::new("fusion", 2);
        r.push(Check::numeric("x", 1e-12, 1e-8, "ok"));
        assert_eq!(emit_report(&r, Format::Text), emit_report(&r.clone(), Format::Text));
        assert!(r.checks[0].passed());
        assert!(!Check::numeric("nan", f64::NAN, 1.0, "").passed());
    }
}
