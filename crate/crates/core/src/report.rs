//! Structured check results shared by the verification suites and the CLI.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl CheckRecord {
    /// Passes iff `expected == actual`.
    pub fn compare<T: PartialEq + Display>(suite: &str, name: &str, inputs: impl Into<String>, expected: &T, actual: &T) -> Self {
        CheckRecord {
            suite: suite.into(),
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed: expected == actual,
        }
    }

    pub fn predicate(suite: &str, name: &str, inputs: impl Into<String>, holds: bool) -> Self {
        CheckRecord {
            suite: suite.into(),
            name: name.into(),
            inputs: inputs.into(),
            expected: "true".into(),
            actual: holds.to_string(),
            passed: holds,
        }
    }

    /// A check that could not be evaluated.
    pub fn error(suite: &str, name: &str, inputs: impl Into<String>, err: impl Display) -> Self {
        CheckRecord {
            suite: suite.into(),
            name: name.into(),
            inputs: inputs.into(),
            expected: "no error".into(),
            actual: format!("error: {err}"),
            passed: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub algebra: String,
    pub notes: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(algebra: impl Into<String>) -> Self {
        Report { algebra: algebra.into(), notes: Vec::new(), checks: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(checks);
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }
}
