//! Lattice sums over compactified momenta.
//!
//! `A_d^{c^2}(nu; b)` is the full-lattice sum
//! `sum_{n in Z^d} (b_1^2 n_1^2 + ... + b_d^2 n_d^2 + c^2)^(-nu)`; it is
//! available both as a direct sum and through its Bessel-function
//! representation. The Epstein functions `E_d` restrict the sum to the
//! positive orthant with `c = 0` and are continued analytically through
//! the Epstein-Hurwitz identity.

mod epstein;
pub(crate) mod orthant;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::series::{SeriesValue, TruncationPolicy};
use crate::specfun::{bessel_k, gamma, rgamma};

pub use epstein::{
    e2_continued, e3_continued, epstein_d_direct, epstein_d_recurrence, epstein_hurwitz_continued,
    epstein_hurwitz_direct, epstein_single_ordering, w_d,
};

/// Inputs of an `A_d` evaluation: the exponent, the inverse lengths
/// `b_i` and the mass parameter `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeQuery {
    pub nu: f64,
    pub lengths: Vec<f64>,
    pub mass_param: f64,
}

impl LatticeQuery {
    pub fn new(nu: f64, lengths: Vec<f64>, mass_param: f64) -> Result<Self> {
        check_lengths(&lengths, 1)?;
        if !nu.is_finite() {
            return Err(invalid(format!("exponent must be finite, got {nu}")));
        }
        if !(mass_param >= 0.0 && mass_param.is_finite()) {
            return Err(invalid(format!(
                "mass parameter must be finite and >= 0, got {mass_param}"
            )));
        }
        Ok(Self {
            nu,
            lengths,
            mass_param,
        })
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    fn require_mass(&self) -> Result<()> {
        if self.mass_param > 0.0 {
            Ok(())
        } else {
            Err(invalid(
                "A_d needs a positive mass parameter; the c = 0 limit is the Epstein function E_d",
            ))
        }
    }
}

/// Contribution of all index subsets of one size to `A_d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsteinTerm {
    pub subset_size: usize,
    pub contribution: SeriesValue,
}

pub(crate) fn check_lengths(lengths: &[f64], min_dim: usize) -> Result<()> {
    if lengths.len() < min_dim || lengths.len() > orthant::MAX_DIM {
        return Err(invalid(format!(
            "expected between {min_dim} and {} lengths, got {}",
            orthant::MAX_DIM,
            lengths.len()
        )));
    }
    if let Some(bad) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(invalid(format!(
            "lengths must be finite and positive, got {bad}"
        )));
    }
    Ok(())
}

/// Non-empty index subsets of `0..d`, grouped by size.
pub(crate) fn subsets_by_size(d: usize) -> Vec<Vec<Vec<usize>>> {
    let mut groups = vec![Vec::new(); d + 1];
    for mask in 1u32..(1 << d) {
        let subset: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        groups[subset.len()].push(subset);
    }
    groups
}

fn sum_terms(terms: &[EpsteinTerm]) -> SeriesValue {
    terms
        .iter()
        .map(|t| t.contribution)
        .reduce(|a, b| a + b)
        .expect("at least one term")
}

pub fn a_d_direct_terms(q: &LatticeQuery, t: &TruncationPolicy) -> Result<Vec<EpsteinTerm>> {
    q.require_mass()?;
    let d = q.dim();
    if !(q.nu > 0.5 * d as f64) {
        return Err(Error::NonConvergent { nu: q.nu, dim: d });
    }
    let c_sq = q.mass_param * q.mass_param;
    let mut terms = vec![EpsteinTerm {
        subset_size: 0,
        contribution: SeriesValue::exact(c_sq.powf(-q.nu)),
    }];
    for (size, group) in subsets_by_size(d).into_iter().enumerate().skip(1) {
        let mut acc = SeriesValue::new(0.0, 0.0, 0);
        for subset in group {
            let scales: Vec<f64> = subset.iter().map(|&i| q.lengths[i]).collect();
            acc = acc + orthant::power_sum(q.nu, &scales, c_sq, t)?;
        }
        terms.push(EpsteinTerm {
            subset_size: size,
            contribution: acc.scale(2f64.powi(size as i32)),
        });
    }
    Ok(terms)
}

/// Direct evaluation of `A_d`, requires `nu > d/2` and `c > 0`.
pub fn a_d_direct(q: &LatticeQuery, t: &TruncationPolicy) -> Result<SeriesValue> {
    Ok(sum_terms(&a_d_direct_terms(q, t)?))
}

pub fn a_d_bessel_terms(q: &LatticeQuery, t: &TruncationPolicy) -> Result<Vec<EpsteinTerm>> {
    q.require_mass()?;
    let d = q.dim() as f64;
    let nu = q.nu;
    let c = q.mass_param;
    let order = nu - 0.5 * d;
    let gamma_order = gamma(order).map_err(|_| Error::Pole {
        factor: "Gamma(nu - d/2)",
        at: nu,
    })?;

    let prod_b: f64 = q.lengths.iter().product();
    let prefactor = 2f64.powf(order + 1.0) * PI.powf(2.0 * nu - 0.5 * d) * rgamma(nu) / prod_b;
    let two_pi_c = 2.0 * PI * c;
    let first = 2f64.powf(order - 1.0) * gamma_order * two_pi_c.powf(-2.0 * order);

    let mut terms = vec![EpsteinTerm {
        subset_size: 0,
        contribution: SeriesValue::exact(prefactor * first),
    }];
    for (size, group) in subsets_by_size(q.dim()).into_iter().enumerate().skip(1) {
        let mut acc = SeriesValue::new(0.0, 0.0, 0);
        for subset in group {
            let inv_b: Vec<f64> = subset.iter().map(|&i| 1.0 / q.lengths[i]).collect();
            acc = acc
                + orthant::kernel_sum(size, t, |n| {
                    let r = n
                        .iter()
                        .zip(&inv_b)
                        .map(|(&ni, ib)| {
                            let x = ni as f64 * ib;
                            x * x
                        })
                        .sum::<f64>()
                        .sqrt();
                    Ok((r / two_pi_c).powf(order) * bessel_k(order, two_pi_c * r)?)
                })?;
        }
        terms.push(EpsteinTerm {
            subset_size: size,
            contribution: acc.scale(2f64.powi(size as i32) * prefactor),
        });
    }
    Ok(terms)
}

/// Bessel-function representation of `A_d`: a Gamma term plus
/// exponentially convergent `K_{nu - d/2}` sums over every index subset.
pub fn a_d_bessel(q: &LatticeQuery, t: &TruncationPolicy) -> Result<SeriesValue> {
    Ok(sum_terms(&a_d_bessel_terms(q, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn query_validation() {
        assert!(LatticeQuery::new(2.0, vec![], 1.0).is_err());
        assert!(LatticeQuery::new(2.0, vec![1.0; 4], 1.0).is_err());
        assert!(LatticeQuery::new(2.0, vec![1.0, -1.0], 1.0).is_err());
        assert!(LatticeQuery::new(2.0, vec![1.0], -1.0).is_err());
        let q = LatticeQuery::new(2.0, vec![1.0], 0.0).unwrap();
        assert!(a_d_direct(&q, &policy()).is_err());
        assert!(a_d_bessel(&q, &policy()).is_err());
    }

    #[test]
    fn subsets_enumerated_once() {
        let groups = subsets_by_size(3);
        assert_eq!(groups[1].len(), 3);
        assert_eq!(groups[2].len(), 3);
        assert_eq!(groups[3], vec![vec![0, 1, 2]]);
    }

    #[test]
    fn large_b_leaves_only_zero_mode() {
        let q = LatticeQuery::new(2.0, vec![1e6], 1.0).unwrap();
        let s = a_d_direct(&q, &policy()).unwrap();
        assert!((s.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn bessel_tail_negligible_for_large_mass() {
        let q = LatticeQuery::new(2.0, vec![1.0], 10.0).unwrap();
        let terms = a_d_bessel_terms(&q, &policy()).unwrap();
        assert!(terms[1].contribution.value.abs() < 1e-15);
        let total = a_d_bessel(&q, &policy()).unwrap();
        assert!((total.value - terms[0].contribution.value).abs() < 1e-15);
    }

    #[test]
    fn bessel_representation_swap_symmetric() {
        let a = LatticeQuery::new(3.0, vec![1.0, 1.0], 1.0).unwrap();
        let b = LatticeQuery::new(3.0, vec![0.7, 1.3], 0.5).unwrap();
        let b_swapped = LatticeQuery::new(3.0, vec![1.3, 0.7], 0.5).unwrap();
        let va = a_d_bessel(&a, &policy()).unwrap();
        assert!(va.value > 0.0);
        let vb = a_d_bessel(&b, &policy()).unwrap().value;
        let vs = a_d_bessel(&b_swapped, &policy()).unwrap().value;
        assert!(((vb - vs) / vb).abs() < 1e-14);
    }

    #[test]
    fn gamma_pole_reported() {
        let q = LatticeQuery::new(1.0, vec![1.0, 1.0], 1.0).unwrap();
        assert!(matches!(
            a_d_bessel(&q, &policy()),
            Err(Error::Pole {
                factor: "Gamma(nu - d/2)",
                ..
            })
        ));
    }
}
