use serde::Serialize;

/// Violations kept verbatim per report; the rest are only counted.
const KEEP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    /// basis indices the failing instance was evaluated on
    pub basis: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an exhaustive verification: how many instances were checked
/// and which failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checked: 0, violation_count: 0, violations: Vec::new() }
    }

    pub fn is_ok(&self) -> bool {
        self.violation_count == 0
    }

    /// Records one instance; `sides` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, check: &str, basis: &[usize], sides: impl FnOnce() -> (String, String)) {
        self.checked += 1;
        if !ok {
            self.fail(check, basis, sides);
        }
    }

    pub fn fail(&mut self, check: &str, basis: &[usize], sides: impl FnOnce() -> (String, String)) {
        self.violation_count += 1;
        if self.violations.len() < KEEP {
            let (lhs, rhs) = sides();
            self.violations.push(Violation { check: check.to_string(), basis: basis.to_vec(), lhs, rhs });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < KEEP {
                self.violations.push(v);
            }
        }
    }

    /// Names of the distinct failed checks.
    pub fn failed_checks(&self) -> Vec<String> {
        let mut names: Vec<String> = self.violations.iter().map(|v| v.check.clone()).collect();
        names.dedup();
        names
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "{}: ok ({} checks)", self.name, self.checked);
        }
        writeln!(f, "{}: {} of {} checks failed", self.name, self.violation_count, self.checked)?;
        for v in &self.violations {
            writeln!(f, "  {} at {:?}: {} != {}", v.check, v.basis, v.lhs, v.rhs)?;
        }
        Ok(())
    }
}
