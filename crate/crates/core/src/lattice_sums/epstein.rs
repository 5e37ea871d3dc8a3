//! Epstein-Hurwitz and multidimensional Epstein functions.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::series::{SeriesValue, TruncationPolicy};
use crate::specfun::{bessel_k, gamma, rgamma, riemann_zeta};

use super::check_lengths;
use super::orthant::{kernel_sum, power_sum};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Radius around a pole of the `D`-parametrised forms inside which
/// evaluation is refused.
const POLE_RADIUS: f64 = 1e-6;

fn refuse_near(dim: f64, poles: &[f64], factor: &'static str) -> Result<()> {
    match poles.iter().find(|&&p| (dim - p).abs() < POLE_RADIUS) {
        Some(_) => Err(Error::Pole { factor, at: dim }),
        None => Ok(()),
    }
}

fn gamma_factor(x: f64, factor: &'static str, at: f64) -> Result<f64> {
    gamma(x).map_err(|_| Error::Pole { factor, at })
}

fn zeta_factor(s: f64, factor: &'static str, at: f64) -> Result<f64> {
    riemann_zeta(s).map_err(|_| Error::Pole { factor, at })
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "{name} must be finite and positive, got {x}"
        )))
    }
}

/// `sum_{n >= 1} (n^2 + p^2)^(-nu)` summed directly.
pub fn epstein_hurwitz_direct(nu: f64, p: f64, t: &TruncationPolicy) -> Result<SeriesValue> {
    positive("p", p)?;
    power_sum(nu, &[1.0], p * p, t)
}

/// Bessel continuation of the Epstein-Hurwitz sum, valid for every `nu`
/// where `Gamma(nu - 1/2)` is finite.
pub fn epstein_hurwitz_continued(nu: f64, p: f64, t: &TruncationPolicy) -> Result<SeriesValue> {
    positive("p", p)?;
    if !nu.is_finite() {
        return Err(invalid(format!("exponent must be finite, got {nu}")));
    }
    let order = nu - 0.5;
    let g = gamma_factor(order, "Gamma(nu - 1/2)", nu)?;
    let rg = rgamma(nu);
    let outer = SQRT_PI / (2.0 * p.powf(2.0 * nu - 1.0)) * rg;
    let head = -0.5 * p.powf(-2.0 * nu);
    if rg == 0.0 {
        return Ok(SeriesValue::exact(head));
    }
    let bessel = kernel_sum(1, t, |n| {
        let x = PI * p * n[0] as f64;
        Ok(x.powf(order) * bessel_k(order, 2.0 * x)?)
    })?;
    Ok(SeriesValue::exact(head) + SeriesValue::exact(outer * g) + bessel.scale(4.0 * outer))
}

/// `E_d(nu; L) = sum_{n >= 1} (L_1^2 n_1^2 + ... + L_d^2 n_d^2)^(-nu)`.
pub fn epstein_d_direct(nu: f64, lengths: &[f64], t: &TruncationPolicy) -> Result<SeriesValue> {
    check_lengths(lengths, 1)?;
    power_sum(nu, lengths, 0.0, t)
}

/// The Bessel remainder of one recurrence step: `last` is the length
/// treated with the Epstein-Hurwitz identity, `rest` the others.
fn w_component(order: f64, rest: &[f64], last: f64, t: &TruncationPolicy) -> Result<SeriesValue> {
    let k = rest.len() + 1;
    let sum = kernel_sum(k, t, |n| {
        let r = rest
            .iter()
            .zip(n)
            .map(|(l, &ni)| {
                let x = l * ni as f64;
                x * x
            })
            .sum::<f64>()
            .sqrt();
        let n_last = n[k - 1] as f64;
        Ok((PI * n_last / (last * r)).powf(order) * bessel_k(order, 2.0 * PI * n_last * r / last)?)
    })?;
    Ok(sum.scale(1.0 / last))
}

/// `W_d(eta; L) = sum_i (1/L_i) sum_n (pi n_i / (L_i R_i))^eta K_eta(2 pi n_i R_i / L_i)`
/// with `R_i` the norm of the lattice vector with `L_i n_i` left out.
pub fn w_d(eta: f64, lengths: &[f64], t: &TruncationPolicy) -> Result<SeriesValue> {
    check_lengths(lengths, 2)?;
    let mut total = SeriesValue::new(0.0, 0.0, 0);
    for i in 0..lengths.len() {
        let rest: Vec<f64> = (0..lengths.len())
            .filter(|&j| j != i)
            .map(|j| lengths[j])
            .collect();
        total = total + w_component(eta, &rest, lengths[i], t)?;
    }
    Ok(total)
}

/// `E_d` continued by peeling off the lengths in the given order, last
/// one first. Different orderings may disagree outside the convergent
/// region, so this is a diagnostic; [`epstein_d_recurrence`] averages
/// all orderings.
pub fn epstein_single_ordering(
    nu: f64,
    lengths: &[f64],
    t: &TruncationPolicy,
) -> Result<SeriesValue> {
    check_lengths(lengths, 1)?;
    if !nu.is_finite() {
        return Err(invalid(format!("exponent must be finite, got {nu}")));
    }
    ordered(nu, lengths, t)
}

fn ordered(nu: f64, lengths: &[f64], t: &TruncationPolicy) -> Result<SeriesValue> {
    let k = lengths.len();
    let last = lengths[k - 1];
    if k == 1 {
        let z = zeta_factor(2.0 * nu, "zeta(2 nu)", nu)?;
        return Ok(SeriesValue::exact(last.powf(-2.0 * nu) * z));
    }
    let prefix = &lengths[..k - 1];
    let order = nu - 0.5;
    let g = gamma_factor(order, "Gamma(nu - 1/2)", nu)?;
    let rg = rgamma(nu);
    let lower = ordered(nu, prefix, t)?.scale(-0.5);
    if rg == 0.0 {
        return Ok(lower);
    }
    let shifted = ordered(order, prefix, t)?.scale(SQRT_PI * g * rg / (2.0 * last));
    let bessel = w_component(order, prefix, last, t)?.scale(2.0 * SQRT_PI * rg);
    Ok(lower + shifted + bessel)
}

fn permutations(items: &[f64]) -> Vec<Vec<f64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn sorted(lengths: &[f64]) -> Vec<f64> {
    let mut v = lengths.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Symmetrised `E_d` for d = 2, 3: the mean of the single-ordering
/// continuations over all `d!` orderings of the lengths.
pub fn epstein_d_recurrence(nu: f64, lengths: &[f64], t: &TruncationPolicy) -> Result<SeriesValue> {
    check_lengths(lengths, 2)?;
    if !nu.is_finite() {
        return Err(invalid(format!("exponent must be finite, got {nu}")));
    }
    // sorting first makes the result independent of the caller's order bit for bit
    let perms = permutations(&sorted(lengths));
    let weight = 1.0 / perms.len() as f64;
    let mut total = SeriesValue::new(0.0, 0.0, 0);
    for p in &perms {
        total = total + ordered(nu, p, t)?;
    }
    Ok(total.scale(weight))
}

/// Continued `E_2((D-2)/2; L1, L2)` as a function of the dimension `D`.
pub fn e2_continued(dim: f64, l1: f64, l2: f64, t: &TruncationPolicy) -> Result<SeriesValue> {
    positive("L1", l1)?;
    positive("L2", l2)?;
    if !dim.is_finite() {
        return Err(invalid(format!("dimension must be finite, got {dim}")));
    }
    refuse_near(
        dim,
        &[3.0],
        "zeta(D-2) and Gamma((D-3)/2) at D = 3; use the pole-cancelling criticality routines",
    )?;
    refuse_near(
        dim,
        &[4.0],
        "zeta(D-3) at D = 4; use the pole-cancelling criticality routines",
    )?;
    let (l1, l2) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
    let g = gamma_factor(0.5 * (dim - 3.0), "Gamma((D-3)/2)", dim)?;
    let rg = rgamma(0.5 * (dim - 2.0));
    let z2 = zeta_factor(dim - 2.0, "zeta(D-2)", dim)?;
    let z3 = zeta_factor(dim - 3.0, "zeta(D-3)", dim)?;

    let first = -0.25 * (l1.powf(2.0 - dim) + l2.powf(2.0 - dim)) * z2;
    let second = SQRT_PI * g * rg / 4.0
        * (1.0 / (l1 * l2.powf(dim - 3.0)) + 1.0 / (l1.powf(dim - 3.0) * l2))
        * z3;
    let head = SeriesValue::exact(first) + SeriesValue::exact(second);
    if rg == 0.0 {
        return Ok(head);
    }
    let w = w_d(0.5 * (dim - 3.0), &[l1, l2], t)?;
    Ok(head + w.scale(SQRT_PI * rg))
}

/// Continued `E_3((D-2)/2; L1, L2, L3)` built from the symmetrised
/// two-dimensional continuation and `W_3`.
pub fn e3_continued(dim: f64, lengths: &[f64], t: &TruncationPolicy) -> Result<SeriesValue> {
    if lengths.len() != 3 {
        return Err(invalid(format!(
            "expected 3 lengths, got {}",
            lengths.len()
        )));
    }
    check_lengths(lengths, 3)?;
    if !dim.is_finite() {
        return Err(invalid(format!("dimension must be finite, got {dim}")));
    }
    refuse_near(
        dim,
        &[3.0, 4.0, 5.0],
        "zeta/Gamma factors of the three-dimensional continuation (D in {3, 4, 5})",
    )?;
    let l = sorted(lengths);
    let g = gamma_factor(0.5 * (dim - 3.0), "Gamma((D-3)/2)", dim)?;
    let rg = rgamma(0.5 * (dim - 2.0));

    let mut pairs = SeriesValue::new(0.0, 0.0, 0);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        pairs = pairs + e2_continued(dim, l[i], l[j], t)?;
    }
    let mut total = pairs.scale(-1.0 / 6.0);
    if rg == 0.0 {
        return Ok(total);
    }
    // one term per cyclic ordering (i, j, k): the length L_i is peeled off
    // and the remaining pair continues one dimension lower
    let mut peeled = SeriesValue::new(0.0, 0.0, 0);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        peeled = peeled + e2_continued(dim - 1.0, l[j], l[k], t)?.scale(1.0 / l[i]);
    }
    total = total + peeled.scale(SQRT_PI * g * rg / 6.0);
    let w = w_d(0.5 * (dim - 3.0), &l, t)?;
    Ok(total + w.scale(2.0 * SQRT_PI * rg / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn permutations_of_three() {
        let p = permutations(&[1.0, 2.0, 3.0]);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![1.0, 2.0, 3.0]);
        assert_eq!(p[5], vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn hurwitz_closed_form() {
        let s = epstein_hurwitz_direct(1.0, 1.0, &policy()).unwrap();
        let exact = (PI / PI.tanh() - 1.0) / 2.0;
        assert!((s.value - exact).abs() < 1e-12, "{s:?}");
        let c = epstein_hurwitz_continued(1.0, 1.0, &policy()).unwrap();
        assert!((c.value - exact).abs() < 1e-12, "{c:?}");
    }

    #[test]
    fn hurwitz_pole_at_half() {
        assert!(matches!(
            epstein_hurwitz_continued(0.5, 1.0, &policy()),
            Err(Error::Pole { .. })
        ));
        let v = epstein_hurwitz_continued(-1.0, 1.0, &policy()).unwrap();
        assert!(v.value.is_finite());
    }

    #[test]
    fn single_dimension_recursion_base_is_zeta() {
        let v = epstein_single_ordering(1.0, &[2.0], &policy()).unwrap();
        assert!((v.value - PI * PI / 24.0).abs() < 1e-15);
    }

    #[test]
    fn w2_positive_and_symmetric() {
        let a = w_d(0.0, &[1.0, 2.0], &policy()).unwrap();
        let b = w_d(0.0, &[2.0, 1.0], &policy()).unwrap();
        assert!(a.value > 0.0);
        assert!(((a.value - b.value) / a.value).abs() < 1e-15);
    }

    #[test]
    fn continued_forms_refuse_poles() {
        for dim in [3.0, 4.0, 3.0 + 1e-7] {
            assert!(matches!(
                e2_continued(dim, 1.0, 1.0, &policy()),
                Err(Error::Pole { .. })
            ));
        }
        for dim in [3.0, 4.0, 5.0 - 1e-7] {
            assert!(matches!(
                e3_continued(dim, &[1.0, 1.0, 1.0], &policy()),
                Err(Error::Pole { .. })
            ));
        }
    }
}
