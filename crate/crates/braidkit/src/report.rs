//! Report types: per-invariant check lists used by the verifiers, and the
//! machine-readable run report emitted by the command-line tool.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One verified assertion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A list of named pass/fail checks.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Checks {
    pub items: Vec<CheckItem>,
}

impl Checks {
    pub fn new() -> Checks {
        Checks::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for Checks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let mark = if item.passed { "ok" } else { "FAIL" };
            if item.detail.is_empty() {
                writeln!(f, "{:4}  {}", mark, item.name)?;
            } else {
                writeln!(f, "{:4}  {} ({})", mark, item.name, item.detail)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Error => "ERROR",
        };
        f.write_str(s)
    }
}

/// One item of a run report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportItem {
    pub key: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u64,
}

/// The machine-readable report of a tool run. Items are kept sorted by key so
/// identical runs produce identical output (modulo the elapsed fields).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub version: String,
    pub parameters: Parameters,
    pub items: Vec<ReportItem>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Parameters {
    pub n_lo: usize,
    pub n_hi: usize,
    pub seed: u64,
    pub depth: usize,
}

impl CheckReport {
    pub fn new(parameters: Parameters) -> CheckReport {
        CheckReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters,
            items: Vec::new(),
        }
    }

    pub fn record(&mut self, key: impl Into<String>, status: Status, detail: impl Into<String>, elapsed_ms: u64) {
        self.items.push(ReportItem {
            key: key.into(),
            status,
            detail: detail.into(),
            elapsed_ms,
        });
    }

    pub fn finish(&mut self) {
        self.items.sort_by(|a, b| a.key.cmp(&b.key));
    }

    pub fn exit_code(&self) -> u8 {
        if self.items.iter().any(|i| matches!(i.status, Status::Fail | Status::Error)) {
            3
        } else {
            0
        }
    }
}
