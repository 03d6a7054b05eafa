//! JSON reports and CSV tables written by the command-line tool.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Measured residual, margin or count.
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    /// Passes when `value <= tolerance`.
    pub fn residual(name: &str, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), passed: value <= tolerance, value, tolerance, detail: String::new() }
    }

    pub fn flag(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, value: if passed { 1.0 } else { 0.0 }, tolerance: 0.0, detail: detail.into() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub config_hash: String,
    pub seed: u64,
    /// Seconds since the Unix epoch; the only field that varies between identical runs.
    pub timestamp: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: serde_json::Value,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(suite: &str, config_hash: String, seed: u64) -> Self {
        let timestamp = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            passed: true,
            checks: Vec::new(),
            data: serde_json::Value::Null,
            provenance: Provenance { config_hash, seed, timestamp },
        }
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Writes a header and rows as RFC 4180 CSV.
pub fn write_csv<R: AsRef<[String]>>(path: &Path, header: &[&str], rows: &[R]) -> Result<()> {
    let io = |e: csv::Error| Error::Config(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r.as_ref()).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Shortest round-trip decimal form of a double.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
