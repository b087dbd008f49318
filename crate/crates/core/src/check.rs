//! Per-case verification outcomes shared by every check suite.

use alloc::string::{String, ToString};
use core::fmt;

use crate::poly::RatPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The case's hypotheses do not hold, so the claim does not apply.
    Skipped,
    /// A numerical guard declined to produce a result.
    Refused,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::Refused => "REFUSED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    /// An exact computation produced the zero polynomial.
    ExactZero,
    /// An exact computation left a nonzero remainder, kept in printable form.
    ExactNonzero(String),
    Float(f64),
    None,
}

impl Residual {
    pub fn exact(residual: &RatPoly) -> Self {
        if residual.is_zero() {
            Residual::ExactZero
        } else {
            Residual::ExactNonzero(residual.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseOutcome {
    pub spec: String,
    pub check: String,
    pub status: Status,
    pub residual: Residual,
    pub tolerance: Option<f64>,
    pub detail: Option<String>,
}

impl CaseOutcome {
    pub fn new(spec: impl Into<String>, check: impl Into<String>) -> Self {
        Self {
            spec: spec.into(),
            check: check.into(),
            status: Status::Pass,
            residual: Residual::None,
            tolerance: None,
            detail: None,
        }
    }

    /// Pass iff the exact residual is the zero polynomial.
    pub fn exact(spec: impl Into<String>, check: impl Into<String>, residual: &RatPoly) -> Self {
        let mut out = Self::new(spec, check);
        out.status = if residual.is_zero() {
            Status::Pass
        } else {
            Status::Fail
        };
        out.residual = Residual::exact(residual);
        out
    }

    /// Pass iff `value <= tolerance` (NaN fails).
    pub fn within(
        spec: impl Into<String>,
        check: impl Into<String>,
        value: f64,
        tolerance: f64,
    ) -> Self {
        let mut out = Self::new(spec, check);
        out.status = if value <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        out.residual = Residual::Float(value);
        out.tolerance = Some(tolerance);
        out
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
