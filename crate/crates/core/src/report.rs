//! Outcome of a verification suite.

use serde::Serialize;
use std::fmt;

/// Counts the checks a suite performed and records every failure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: 0, failures: Vec::new() }
    }

    /// Records one check; `describe` is only called on failure.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.checks += 1;
        self.failures.push(msg.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.name)));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {} ({} checks", self.name, status, self.checks)?;
        if !self.passed() {
            write!(f, ", {} failures; first: {}", self.failures.len(), self.failures[0])?;
        }
        write!(f, ")")
    }
}
