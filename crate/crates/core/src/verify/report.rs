//! Per-check records and suite reports.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::Result;

/// Relative slack for exact assertions backed by closed-form arithmetic.
pub const EXACT_SLACK: f64 = 1e-9;

/// One verified inequality `lhs <= constant * rhs` (or a recorded
/// observation when nothing is asserted).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Multiplier applied to `rhs` in the asserted inequality; 1 when the
    /// record is observational.
    pub constant: f64,
    /// `lhs / rhs`; meaningless when `degenerate`.
    pub ratio: f64,
    pub pass: bool,
    /// True when `rhs = 0`, in which case the check passes iff `lhs = 0`.
    pub degenerate: bool,
    /// True for observational records that never fail.
    pub observed_only: bool,
    pub detail: String,
}

impl CheckRecord {
    /// Assert `lhs <= constant * rhs` with the standard relative slack.
    pub fn exact(id: impl Into<String>, lhs: f64, rhs: f64, constant: f64) -> CheckRecord {
        let degenerate = rhs == 0.0;
        let pass = if degenerate {
            lhs == 0.0
        } else {
            lhs <= constant * rhs * (1.0 + EXACT_SLACK)
        };
        CheckRecord {
            id: id.into(),
            lhs,
            rhs,
            constant,
            ratio: if degenerate { 0.0 } else { lhs / rhs },
            pass,
            degenerate,
            observed_only: false,
            detail: String::new(),
        }
    }

    /// Record a ratio without asserting anything.
    pub fn observed(id: impl Into<String>, lhs: f64, rhs: f64) -> CheckRecord {
        let degenerate = rhs == 0.0;
        CheckRecord {
            id: id.into(),
            lhs,
            rhs,
            constant: 1.0,
            ratio: if degenerate { 0.0 } else { lhs / rhs },
            pass: true,
            degenerate,
            observed_only: true,
            detail: String::new(),
        }
    }

    /// Assert a boolean condition, recording it as a 0/1 check.
    pub fn assert_that(id: impl Into<String>, condition: bool) -> CheckRecord {
        CheckRecord {
            id: id.into(),
            lhs: if condition { 0.0 } else { 1.0 },
            rhs: 1.0,
            constant: 1.0,
            ratio: 0.0,
            pass: condition,
            degenerate: false,
            observed_only: false,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> CheckRecord {
        self.detail = detail.into();
        self
    }
}

/// The result of one suite over one corpus.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub instance_count: usize,
    pub records: Vec<CheckRecord>,
    /// Baseline values consulted or written by this run.
    pub baselines: std::collections::BTreeMap<String, f64>,
    /// Precondition or lower-bound-mode warnings.
    pub warnings: Vec<String>,
    /// Per-suite observed maxima awaiting baseline comparison; consumed
    /// before the report is finalized, never serialized.
    #[serde(skip)]
    pub observed_for_baselines: std::collections::BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, instance_count: usize) -> Self {
        VerificationReport {
            suite: suite.into(),
            seed,
            instance_count,
            records: Vec::new(),
            baselines: std::collections::BTreeMap::new(),
            warnings: Vec::new(),
            observed_for_baselines: std::collections::BTreeMap::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| !r.pass).collect()
    }

    /// Largest non-degenerate ratio among records whose id starts with
    /// `prefix`; `None` if there is none.
    pub fn max_ratio(&self, prefix: &str) -> Option<f64> {
        self.records
            .iter()
            .filter(|r| !r.degenerate && r.id.starts_with(prefix))
            .map(|r| r.ratio)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }

    /// Atomic JSON write: temp file in the target directory, then rename.
    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        write_atomic(path, &text)
    }

    /// Delimited table of the records, one row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,lhs,rhs,constant,ratio,pass,degenerate,observed_only\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.id, r.lhs, r.rhs, r.constant, r.ratio, r.pass, r.degenerate, r.observed_only
            ));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_csv())
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().map(|s| s.to_string_lossy()).unwrap_or_default()
    ));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
