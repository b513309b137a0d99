//! PASS/FAIL records produced by the verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::surface::Surface;

/// One `(g, n, m)` instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    pub genus: u32,
    pub boundaries: u32,
    pub points: u32,
}

impl Instance {
    pub fn new(surface: &Surface, points: u32) -> Self {
        Self {
            genus: surface.genus(),
            boundaries: surface.boundaries(),
            points,
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} n={} m={}", self.genus, self.boundaries, self.points)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub instance: Instance,
    pub kind: &'static str,
    pub detail: String,
    pub passed: bool,
    /// Extra context printed only on failure.
    pub failure: Option<String>,
}

impl Check {
    /// An equality check; both sides go into the detail.
    pub fn equal<T: PartialEq + fmt::Display>(
        instance: Instance,
        kind: &'static str,
        prefix: impl fmt::Display,
        lhs: (&str, T),
        rhs: (&str, T),
    ) -> Self {
        let prefix = prefix.to_string();
        let sep = if prefix.is_empty() { "" } else { " " };
        Self {
            instance,
            kind,
            detail: format!("{prefix}{sep}{}={} {}={}", lhs.0, lhs.1, rhs.0, rhs.1),
            passed: lhs.1 == rhs.1,
            failure: None,
        }
    }

    pub fn holds(
        instance: Instance,
        kind: &'static str,
        detail: impl Into<String>,
        passed: bool,
        failure: impl FnOnce() -> String,
    ) -> Self {
        Self {
            instance,
            kind,
            detail: detail.into(),
            passed,
            failure: (!passed).then(failure),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {} {}", self.kind, self.detail)
        } else {
            write!(f, "FAIL {} {} {}", self.kind, self.instance, self.detail)?;
            if let Some(extra) = &self.failure {
                write!(f, " {extra}")?;
            }
            Ok(())
        }
    }
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
