//! Named pass/fail checks collected into a verification report.
//!
//! Every check tracks a *margin*: a signed distance from violation, positive
//! when the check holds. The worst (smallest) margin and the grid location
//! where it occurred are kept for diagnostics.

use serde::Serialize;

/// Outcome a check is expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    Fail,
    /// Recorded for information only; never affects the report outcome.
    Observe,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: Expectation,
    pub worst_margin: f64,
    pub at: Option<f64>,
}

impl Check {
    /// Whether the observed outcome agrees with the expectation.
    pub fn as_expected(&self) -> bool {
        match self.expected {
            Expectation::Pass => self.passed,
            Expectation::Fail => !self.passed,
            Expectation::Observe => true,
        }
    }
}

/// Accumulates margins for one check.
#[derive(Debug, Clone)]
pub struct MarginTracker {
    name: String,
    expected: Expectation,
    worst: f64,
    at: Option<f64>,
    samples: usize,
}

impl MarginTracker {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            expected: Expectation::Pass,
            worst: f64::INFINITY,
            at: None,
            samples: 0,
        }
    }

    pub fn expect(mut self, expected: Expectation) -> Self {
        self.expected = expected;
        self
    }

    /// Records one margin observed at grid location `at`. NaN counts as a
    /// violation.
    pub fn record(&mut self, at: f64, margin: f64) {
        let margin = if margin.is_nan() {
            f64::NEG_INFINITY
        } else {
            margin
        };
        self.samples += 1;
        if margin < self.worst || self.at.is_none() {
            self.worst = margin;
            self.at = Some(at);
        }
    }

    /// Records a margin that has no meaningful grid location.
    pub fn record_scalar(&mut self, margin: f64) {
        let margin = if margin.is_nan() {
            f64::NEG_INFINITY
        } else {
            margin
        };
        self.samples += 1;
        if margin < self.worst {
            self.worst = margin;
        }
    }

    pub fn finish(self) -> Check {
        // a check with no samples has nothing to fail on
        let passed = self.samples > 0 && self.worst >= 0.0;
        Check {
            name: self.name,
            passed,
            expected: self.expected,
            worst_margin: if self.samples == 0 { 0.0 } else { self.worst },
            at: self.at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n: u32,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, n: u32) -> Self {
        Self {
            suite: suite.into(),
            n,
            checks: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.as_expected();
        self.checks.push(check);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends every check of `other`, prefixing names with its suite.
    pub fn merge(&mut self, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{}.{}", other.suite, c.name);
            self.push(c);
        }
    }
}

/// Margin for `|a - b| <= rel * max(|a|, |b|) + abs`.
pub fn agreement_margin(a: f64, b: f64, rel: f64, abs: f64) -> f64 {
    rel * a.abs().max(b.abs()) + abs - (a - b).abs()
}
