use std::fmt;

use serde::Serialize;

/// One named pass/fail check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
    pub details: String,
}

impl Check {
    pub fn new(
        check: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        details: impl Into<String>,
    ) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        Self {
            check: check.into(),
            pass: expected == actual,
            expected,
            actual,
            details: details.into(),
        }
    }

    pub fn predicate(check: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            pass,
            expected: "true".into(),
            actual: pass.to_string(),
            details: details.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            write!(f, "{status} {}: expected {}, actual {}", c.check, c.expected, c.actual)?;
            if !c.details.is_empty() {
                write!(f, " ({})", c.details)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
