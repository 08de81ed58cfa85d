//! Check reports: one record per verified identity, with the statement
//! being checked, pass/fail status, a residual for diagnosis, and timing.

use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Stable identifier, e.g. "theta.projection.idempotent".
    pub id: String,
    /// The identity being verified, written out in ASCII math.
    pub statement: String,
    pub passed: bool,
    /// Residual or note; "0" for exact passes.
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    /// Run `f`, timing it; `f` returns (passed, detail).
    pub fn check(&mut self, id: &str, statement: &str, f: impl FnOnce() -> (bool, String)) {
        let t0 = Instant::now();
        let (passed, detail) = f();
        self.checks.push(Check {
            id: id.to_string(),
            statement: statement.to_string(),
            passed,
            detail,
            millis: t0.elapsed().as_millis(),
        });
    }

    /// Record an exact check: passes iff the residual string is empty.
    pub fn exact(&mut self, id: &str, statement: &str, f: impl FnOnce() -> String) {
        self.check(id, statement, || {
            let residual = f();
            if residual.is_empty() {
                (true, "0".to_string())
            } else {
                (false, residual)
            }
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}
