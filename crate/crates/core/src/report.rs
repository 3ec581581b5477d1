//! Named verification results.

use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

/// One verification result. `paper_anchor` names the formula being checked
/// or is "plumbing" for infrastructure checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub paper_anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    pub status: Status,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl CheckReport {
    /// Pass iff residual ≤ tolerance; a non-finite residual fails.
    pub fn new(name: &str, anchor: &str, residual: f64, tolerance: f64) -> Self {
        let status = if residual.is_finite() && residual <= tolerance { Status::Pass } else { Status::Fail };
        CheckReport {
            name: name.to_string(),
            paper_anchor: anchor.to_string(),
            residual,
            tolerance,
            status,
            runtime_ms: 0.0,
            note: None,
        }
    }

    /// A report that never fails: it passes within tolerance and warns otherwise.
    pub fn advisory(name: &str, anchor: &str, residual: f64, tolerance: f64) -> Self {
        let mut r = Self::new(name, anchor, residual, tolerance);
        if r.status == Status::Fail {
            r.status = Status::Warn;
        }
        r
    }

    /// A failed check caused by an error rather than a residual.
    pub fn error(name: &str, anchor: &str, tolerance: f64, err: impl std::fmt::Display) -> Self {
        let mut r = Self::new(name, anchor, f64::INFINITY, tolerance);
        r.note = Some(err.to_string());
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_runtime(mut self, ms: f64) -> Self {
        self.runtime_ms = ms;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Run a residual computation, timing it; errors become failed reports.
    pub fn timed(
        name: &str,
        anchor: &str,
        tolerance: f64,
        f: impl FnOnce() -> crate::Result<f64>,
    ) -> Self {
        let start = Instant::now();
        let r = match f() {
            Ok(res) => Self::new(name, anchor, res, tolerance),
            Err(e) => Self::error(name, anchor, tolerance, e),
        };
        r.with_runtime(start.elapsed().as_secs_f64() * 1e3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_residual() {
        assert_eq!(CheckReport::new("a", "plumbing", 1e-9, 1e-8).status, Status::Pass);
        assert_eq!(CheckReport::new("a", "plumbing", 1e-7, 1e-8).status, Status::Fail);
        assert_eq!(CheckReport::new("a", "plumbing", f64::NAN, 1.0).status, Status::Fail);
        assert_eq!(CheckReport::advisory("a", "plumbing", 2.0, 1.0).status, Status::Warn);
    }

    #[test]
    fn json_shape() {
        let r = CheckReport::new("x", "plumbing", 0.0, 1.0);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"status\":\"pass\""));
        assert!(!s.contains("note"));
    }
}
