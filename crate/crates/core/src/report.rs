//! Pass/fail ledger types shared by every check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::matrix::ExactMatrix;

/// Outcome of a single exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub label: String,
    pub passed: bool,
    /// Present iff the check failed.
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass(label: impl Into<String>) -> Self {
        CheckOutcome {
            label: label.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(label: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckOutcome {
            label: label.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_bool(label: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(label)
        } else {
            Self::fail(label, witness())
        }
    }

    /// Compares two matrices; on mismatch the witness records both sides and
    /// their difference.
    pub fn matrices(label: impl Into<String>, actual: &ExactMatrix, expected: &ExactMatrix) -> Self {
        if actual == expected {
            return Self::pass(label);
        }
        let witness = match actual.sub(expected) {
            Ok(diff) => format!("got {actual}, expected {expected}, difference {diff}"),
            Err(_) => format!("got {actual}, expected {expected}"),
        };
        Self::fail(label, witness)
    }
}

/// Outcomes of every check run against one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: String,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn new(case: impl Into<String>) -> Self {
        VerificationReport {
            case: case.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, outcome: CheckOutcome) {
        self.checks.push(outcome);
    }

    /// Appends outcomes with their labels prefixed by `group/`.
    pub fn extend_group(&mut self, group: &str, outcomes: impl IntoIterator<Item = CheckOutcome>) {
        for mut o in outcomes {
            o.label = format!("{group}/{}", o.label);
            self.checks.push(o);
        }
    }

    /// Conjunction of all outcomes.
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Distinct group prefixes in first-seen order.
    pub fn groups(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for c in &self.checks {
            let g = c.label.split('/').next().unwrap_or("");
            if !seen.contains(&g) {
                seen.push(g);
            }
        }
        seen
    }
}
