//! Sums over the positive orthant `n in {1, 2, ...}^k` for k <= 3.
//!
//! Points are visited shell by shell, shell `m` being the set of indices
//! whose largest component equals `m`. Every shell is reduced with a
//! compensated sum and then folded into the running total in shell order,
//! so results are independent of anything but the inputs.

use crate::error::{Error, Result};
use crate::series::{CompensatedSum, SeriesValue, TruncationPolicy};

pub(crate) const MAX_DIM: usize = 3;

/// First checkpoint of the power-law sums; later ones double.
const FIRST_CHECKPOINT: usize = 4;
/// Richardson is only trusted once this many checkpoints exist.
const MIN_CHECKPOINTS: usize = 4;
const MAX_RICHARDSON_COLUMNS: usize = 10;
/// Below this the Richardson differences are rounding noise.
const ROUNDING_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Calls `visit` for every index tuple of shell `m` in a fixed order.
pub(crate) fn for_each_shell_point<F>(k: usize, m: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&[u64]) -> Result<()>,
{
    debug_assert!((1..=MAX_DIM).contains(&k) && m >= 1);
    let mut idx = [0u64; MAX_DIM];
    for pivot in 0..k {
        idx[pivot] = m;
        fill(&mut idx[..k], 0, pivot, m, &mut visit)?;
    }
    Ok(())
}

fn fill<F>(idx: &mut [u64], pos: usize, pivot: usize, m: u64, visit: &mut F) -> Result<()>
where
    F: FnMut(&[u64]) -> Result<()>,
{
    if pos == idx.len() {
        return visit(idx);
    }
    if pos == pivot {
        return fill(idx, pos + 1, pivot, m, visit);
    }
    // before the pivot no component may reach m, after it any value up to m
    let hi = if pos < pivot { m - 1 } else { m };
    for v in 1..=hi {
        idx[pos] = v;
        fill(idx, pos + 1, pivot, m, visit)?;
    }
    Ok(())
}

/// `x^(-nu)`, with integer and half-integer exponents done by repeated
/// multiplication, which is several times cheaper than `powf`.
#[derive(Clone, Copy)]
enum InversePower {
    Integer(i32),
    HalfInteger(i32),
    General(f64),
}

impl InversePower {
    fn new(nu: f64) -> Self {
        let twice = 2.0 * nu;
        if twice.fract() == 0.0 && twice.abs() <= 64.0 {
            let twice = twice as i32;
            if twice % 2 == 0 {
                InversePower::Integer(twice / 2)
            } else {
                InversePower::HalfInteger((twice - 1) / 2)
            }
        } else {
            InversePower::General(nu)
        }
    }

    #[inline]
    fn eval(self, x: f64) -> f64 {
        match self {
            InversePower::Integer(n) => x.powi(-n),
            InversePower::HalfInteger(n) => x.powi(-n) / x.sqrt(),
            InversePower::General(nu) => x.powf(-nu),
        }
    }
}

/// `sum_{n >= 1} (sum_i scales_i^2 n_i^2 + c_sq)^(-nu)`.
///
/// The box-truncated partial sums `S(N)` approach the limit through an
/// expansion in powers `N^-(2 nu - k + j)`, j = 0, 1, 2, ..., so partial
/// sums at doubling cutoffs are Richardson-extrapolated. The reported
/// bound is the change between the last two extrapolants.
pub(crate) fn power_sum(
    nu: f64,
    scales: &[f64],
    c_sq: f64,
    policy: &TruncationPolicy,
) -> Result<SeriesValue> {
    let k = scales.len();
    if !(nu > 0.5 * k as f64) {
        return Err(Error::NonConvergent { nu, dim: k });
    }
    let sq: Vec<f64> = scales.iter().map(|s| s * s).collect();
    let power = InversePower::new(nu);
    let lead = 2.0 * nu - k as f64;
    let ratios: Vec<f64> = (0..MAX_RICHARDSON_COLUMNS)
        .map(|j| 2f64.powf(lead + j as f64) - 1.0)
        .collect();

    let mut total = CompensatedSum::new();
    let mut terms = 0u64;
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut checkpoint = FIRST_CHECKPOINT;
    let mut best = f64::NAN;
    let mut err = f64::INFINITY;
    let mut m = 0usize;

    loop {
        if checkpoint > policy.max_index {
            return Err(Error::Budget {
                max_index: policy.max_index,
                estimate: if best.is_nan() { total.value() } else { best },
                error_bound: err,
            });
        }
        while m < checkpoint {
            m += 1;
            let mut shell = CompensatedSum::new();
            for_each_shell_point(k, m as u64, |n| {
                let r2 = n
                    .iter()
                    .zip(&sq)
                    .fold(c_sq, |acc, (&ni, s2)| acc + s2 * (ni * ni) as f64);
                shell.add(power.eval(r2));
                Ok(())
            })?;
            terms += (m as u64).pow(k as u32) - (m as u64 - 1).pow(k as u32);
            total.add(shell.value());
        }

        let mut row = vec![total.value()];
        if let Some(prev) = table.last() {
            let cols = (prev.len() + 1).min(MAX_RICHARDSON_COLUMNS + 1);
            for c in 1..cols {
                let r = row[c - 1] + (row[c - 1] - prev[c - 1]) / ratios[c - 1];
                row.push(r);
            }
        }
        let row_best = *row.last().unwrap();
        if let Some(prev) = table.last() {
            err = (row_best - prev.last().unwrap()).abs();
        }
        best = row_best;
        table.push(row);

        let floor = ROUNDING_FLOOR * best.abs();
        if table.len() >= MIN_CHECKPOINTS && err <= policy.tolerance_for(best).max(floor) {
            return Ok(SeriesValue::new(best, err + floor, terms));
        }
        checkpoint *= 2;
    }
}

/// `sum_{n >= 1} kernel(n)` for a positive kernel that decays
/// exponentially in every index.
///
/// Stops once the geometric extrapolation of the shell ratio puts the
/// remaining shells below tolerance; that extrapolation, doubled, is the
/// reported bound.
pub(crate) fn kernel_sum<F>(
    k: usize,
    policy: &TruncationPolicy,
    mut kernel: F,
) -> Result<SeriesValue>
where
    F: FnMut(&[u64]) -> Result<f64>,
{
    let mut total = CompensatedSum::new();
    let mut terms = 0u64;
    let mut previous = f64::NAN;
    let mut m = 0u64;
    loop {
        m += 1;
        if m as usize > policy.max_index {
            return Err(Error::Budget {
                max_index: policy.max_index,
                estimate: total.value(),
                error_bound: previous.abs(),
            });
        }
        let mut shell = CompensatedSum::new();
        for_each_shell_point(k, m, |n| {
            shell.add(kernel(n)?);
            terms += 1;
            Ok(())
        })?;
        let shell = shell.value();
        total.add(shell);
        let value = total.value();

        if shell == 0.0 {
            return Ok(SeriesValue::new(value, 0.0, terms));
        }
        if m >= 2 {
            let q = shell / previous;
            if q < 0.9 {
                let tail = 2.0 * shell * q / (1.0 - q);
                if tail <= policy.tolerance_for(value) {
                    let rounding = 4.0 * f64::EPSILON * value.abs();
                    return Ok(SeriesValue::new(value, tail.abs() + rounding, terms));
                }
            }
        }
        previous = shell;
    }
}
