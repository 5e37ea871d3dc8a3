//! Truncated-series plumbing: the value/bound carrier, the truncation
//! policy and a compensated accumulator.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A truncated infinite sum together with an absolute bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub error_bound: f64,
    pub terms_used: u64,
}

impl SeriesValue {
    pub fn new(value: f64, error_bound: f64, terms_used: u64) -> Self {
        debug_assert!(error_bound.is_finite() && error_bound >= 0.0);
        Self {
            value,
            error_bound,
            terms_used,
        }
    }

    /// A closed-form value, accurate to a few ulps.
    pub fn exact(value: f64) -> Self {
        Self::new(value, 4.0 * f64::EPSILON * value.abs(), 1)
    }

    pub fn scale(self, factor: f64) -> Self {
        Self::new(
            self.value * factor,
            self.error_bound * factor.abs(),
            self.terms_used,
        )
    }
}

impl Add for SeriesValue {
    type Output = SeriesValue;

    fn add(self, rhs: SeriesValue) -> SeriesValue {
        SeriesValue::new(
            self.value + rhs.value,
            self.error_bound + rhs.error_bound,
            self.terms_used + rhs.terms_used,
        )
    }
}

impl Mul<f64> for SeriesValue {
    type Output = SeriesValue;

    fn mul(self, rhs: f64) -> SeriesValue {
        self.scale(rhs)
    }
}

/// Stopping rule for every truncated sum.
///
/// A sum stops once its estimated remainder is below
/// `max(abs_tol, rel_tol * |value|)`; it fails with a budget error if any
/// summation index would have to exceed `max_index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_index: usize,
}

impl TruncationPolicy {
    pub fn new(rel_tol: f64, abs_tol: f64, max_index: usize) -> Result<Self> {
        let in_unit = |x: f64| x > 0.0 && x < 1.0;
        if !in_unit(rel_tol) || !in_unit(abs_tol) {
            return Err(invalid(format!(
                "tolerances must lie in (0, 1), got rel_tol = {rel_tol}, abs_tol = {abs_tol}"
            )));
        }
        if max_index < 2 {
            return Err(invalid(format!(
                "max_index must be at least 2, got {max_index}"
            )));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_index,
        })
    }

    pub fn with_max_index(self, max_index: usize) -> Result<Self> {
        Self::new(self.rel_tol, self.abs_tol, max_index)
    }

    pub(crate) fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            abs_tol: 1e-16,
            max_index: 4096,
        }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::new(1e-12, 1e-14, 2).is_ok());
        assert!(TruncationPolicy::new(0.0, 1e-14, 100).is_err());
        assert!(TruncationPolicy::new(1e-12, 1.0, 100).is_err());
        assert!(TruncationPolicy::new(1e-12, 1e-14, 1).is_err());
    }

    #[test]
    fn compensated_beats_naive() {
        let xs: Vec<f64> = std::iter::once(1.0)
            .chain(std::iter::repeat_n(1e-16, 10_000))
            .collect();
        let naive: f64 = xs.iter().sum();
        let comp = compensated_sum(xs.iter().copied());
        assert_eq!(naive, 1.0);
        assert!((comp - (1.0 + 1e-12)).abs() < 1e-24);
    }

    #[test]
    fn neumaier_handles_large_late_term() {
        let s = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(s, 2.0);
    }
}
