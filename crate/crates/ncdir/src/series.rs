//! Truncation policy and guarded summation for infinite series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stopping rule shared by every truncated series in the crate.
///
/// A series (or, for multiple series, the sequence of total-degree layers)
/// is accepted once `guard` consecutive terms stay below `rel_tol` times the
/// partial sum in absolute value. A single sub-tolerance term is not enough:
/// a term can cross zero long before the tail is negligible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    /// Relative tolerance on trailing terms.
    pub rel_tol: f64,
    /// Maximum number of terms per series index.
    pub max_terms: usize,
    /// Consecutive sub-tolerance terms required before stopping.
    pub guard: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 10_000,
            guard: 3,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize, guard: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::BadParameter(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if max_terms < 1 {
            return Err(Error::BadParameter("max_terms must be at least 1".into()));
        }
        if guard < 1 {
            return Err(Error::BadParameter("guard must be at least 1".into()));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            guard,
        })
    }
}

/// Incremental summation with the guard stopping rule.
#[derive(Debug, Clone)]
pub(crate) struct GuardedSum {
    sum: f64,
    below: usize,
    terms: usize,
    last_rel: f64,
}

impl GuardedSum {
    pub fn new() -> Self {
        Self {
            sum: 0.0,
            below: 0,
            terms: 0,
            last_rel: f64::INFINITY,
        }
    }

    /// Adds `term`; returns `true` once the guard criterion is satisfied.
    pub fn push(&mut self, term: f64, ctl: &SeriesControl) -> bool {
        self.sum += term;
        self.terms += 1;
        self.last_rel = if self.sum != 0.0 {
            (term / self.sum).abs()
        } else {
            f64::INFINITY
        };
        if term.abs() <= ctl.rel_tol * self.sum.abs() {
            self.below += 1;
        } else {
            self.below = 0;
        }
        self.below >= ctl.guard
    }

    pub fn value(&self) -> f64 {
        self.sum
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// True when the running sum has left the representable range.
    pub fn diverged(&self) -> bool {
        !self.sum.is_finite()
    }

    pub fn non_convergent(&self) -> Error {
        Error::NonConvergent {
            terms: self.terms,
            last_rel: self.last_rel,
        }
    }
}
