//! Pass/fail records for identity suites.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    /// Human-readable statement of the identity.
    pub anchor: String,
    pub passed: bool,
    /// Largest residual entry modulus (0 for exact passes).
    pub residual: f64,
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `residual` vanishes (exactly, or up to `tol` in float mode).
    pub fn matrix<S: Scalar>(id: &str, anchor: &str, residual: &Matrix<S>, tol: f64) -> Check {
        let first = residual.first_nonzero(tol);
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            passed: first.is_none(),
            residual: residual.max_abs(),
            detail: first.map(|(r, c)| format!("entry ({r}, {c}) = {:?}", residual.get(r, c))),
        }
    }

    /// Residual of `lhs − rhs`.
    pub fn equal<S: Scalar>(id: &str, anchor: &str, lhs: &Matrix<S>, rhs: &Matrix<S>, tol: f64) -> Check {
        Self::matrix(id, anchor, &lhs.sub(rhs), tol)
    }

    pub fn flag(id: &str, anchor: &str, passed: bool, detail: Option<String>) -> Check {
        Check { id: id.to_string(), anchor: anchor.to_string(), passed, residual: 0.0, detail }
    }

    /// Residual from a list of scalars that must all vanish.
    pub fn scalars<S: Scalar>(id: &str, anchor: &str, values: &[S], tol: f64) -> Check {
        let bad = values.iter().position(|v| !v.is_negligible(tol));
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            passed: bad.is_none(),
            residual: values.iter().map(|v| v.modulus()).fold(0.0, f64::max),
            detail: bad.map(|k| format!("component {k} = {:?}", values[k])),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub suite: String,
    pub model: String,
    pub mode: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, model: &str, mode: &str) -> Report {
        Report { suite: suite.to_string(), model: model.to_string(), mode: mode.to_string(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefixes every id, e.g. with the value of `t`.
    pub fn tagged(mut self, tag: &str) -> Report {
        for c in &mut self.checks {
            c.id = format!("{tag}.{}", c.id);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}
