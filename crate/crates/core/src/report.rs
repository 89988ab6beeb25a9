//! Structured pass/fail reports emitted by every checker.

use serde::{Deserialize, Serialize};

/// A located piece of evidence: which probe produced the worst (or a failing)
/// residual.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    pub label: String,
    pub residual: f64,
}

/// Outcome of one named check.  `max_residual` is always the worst residual
/// seen, whether or not the check passed; `witnesses` lists the probes that
/// exceeded the tolerance (capped, worst kept first).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    /// Informational lines that belong in the report whether or not the
    /// check passes (found solutions, chosen branches, ...).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<CheckReport>,
}

const MAX_WITNESSES: usize = 8;

impl CheckReport {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        CheckReport {
            name: name.into(),
            pass: true,
            max_residual: 0.0,
            tolerance,
            seed: None,
            witnesses: Vec::new(),
            notes: Vec::new(),
            subchecks: Vec::new(),
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Record one residual.  The label is only rendered when the probe fails,
    /// so callers can pass a closure that formats lazily.
    pub fn observe(&mut self, residual: f64, label: impl FnOnce() -> String) {
        if residual > self.max_residual || !residual.is_finite() {
            self.max_residual = if residual.is_finite() { residual } else { f64::INFINITY };
        }
        if !(residual <= self.tolerance) {
            self.pass = false;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Witness { label: label(), residual });
            }
        }
    }

    /// Record a bare predicate: failure contributes a unit residual.
    pub fn observe_bool(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.observe(if ok { 0.0 } else { 1.0 }, label);
    }

    /// Fold a nested report into this one; the parent fails if the child does.
    pub fn push_subcheck(&mut self, sub: CheckReport) {
        if !sub.pass {
            self.pass = false;
        }
        if sub.max_residual > self.max_residual {
            self.max_residual = sub.max_residual;
        }
        self.subchecks.push(sub);
    }

    /// One-line human summary, used by the CLI and the acceptance harness.
    pub fn summary(&self) -> String {
        format!(
            "[{}] {} (max residual {:.3e}, tolerance {:.1e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.max_residual,
            self.tolerance
        )
    }
}
