//! Real special functions: Gamma, digamma, Riemann zeta (with its
//! analytic continuation) and the modified Bessel function `K_nu` of
//! arbitrary real order.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Taylor coefficients of `1/Gamma(1 + x)` about `x = 0`.
#[allow(clippy::excessive_precision)]
const RGAMMA_TAYLOR: [f64; 29] = [
    1.0,
    5.772_156_649_015_328_606_1e-1,
    -6.558_780_715_202_538_810_8e-1,
    -4.200_263_503_409_523_552_9e-2,
    1.665_386_113_822_914_895e-1,
    -4.219_773_455_554_433_674_8e-2,
    -9.621_971_527_876_973_562_1e-3,
    7.218_943_246_663_099_542_4e-3,
    -1.165_167_591_859_065_112_1e-3,
    -2.152_416_741_149_509_728_2e-4,
    1.280_502_823_881_161_861_5e-4,
    -2.013_485_478_078_823_865_6e-5,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
    -2.298_745_684_435_370_206_6e-19,
];

/// `B_{2k} / (2k)!` for k = 1..=12.
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1_124_000_727_777_607_680_000.0,
    -236_364_091.0 / 2730.0 / 620_448_401_733_239_439_360_000.0,
];

const ZETA_EM_CUTOFF: u32 = 20;
const BESSEL_ORDER_MAX: f64 = 60.0;
const GAMMA_OVERFLOW: f64 = 171.624;

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `1/Gamma(1 + x)` for |x| <= 1/2.
fn rgamma_near_one(x: f64) -> f64 {
    RGAMMA_TAYLOR.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Splits `x` as `f + n` with `f` in [0.5, 1.5) and returns `(f, n)`.
fn split_unit(x: f64) -> (f64, i64) {
    let n = (x - 0.5).floor();
    (x - n, n as i64)
}

/// Product `f (f+1) ... (f+n-1)` for n >= 0.
fn rising(f: f64, n: i64) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (f + k as f64))
}

/// Gamma function. Relative error stays below ~1e-14 for |x| <= 50.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain {
            function: "gamma",
            reason: "argument is NaN".into(),
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            factor: "Gamma",
            at: x,
        });
    }
    if x > GAMMA_OVERFLOW {
        return Err(Error::Overflow { function: "gamma" });
    }
    let (f, n) = split_unit(x);
    let base = 1.0 / rgamma_near_one(f - 1.0);
    if n >= 0 {
        Ok(base * rising(f, n))
    } else {
        // Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1)), m = -n
        Ok(base / rising(x, -n))
    }
}

/// Reciprocal Gamma, an entire function: exactly zero at the poles of Gamma.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > GAMMA_OVERFLOW {
        return 0.0;
    }
    let (f, n) = split_unit(x);
    let base = rgamma_near_one(f - 1.0);
    if n >= 0 {
        base / rising(f, n)
    } else {
        base * rising(x, -n)
    }
}

pub fn digamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            factor: "digamma",
            at: x,
        });
    }
    if x < 0.0 {
        // psi(x) = psi(1 - x) - pi / tan(pi x)
        let frac = x - x.round();
        return Ok(digamma(1.0 - x)? - PI / (PI * frac).tan());
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift += 1.0 / y;
        y += 1.0;
    }
    let w = 1.0 / (y * y);
    let tail = w
        * (1.0 / 12.0
            - w * (1.0 / 120.0
                - w * (1.0 / 252.0
                    - w * (1.0 / 240.0 - w * (1.0 / 132.0 - w * (691.0 / 32_760.0 - w / 12.0))))));
    Ok(y.ln() - 0.5 / y - tail - shift)
}

/// Euler-Maclaurin evaluation of `zeta(s) - 1/(s - 1)`, valid for s > -20.
fn zeta_em_regular(s: f64) -> f64 {
    let n = ZETA_EM_CUTOFF;
    let nf = n as f64;
    let mut head = crate::series::CompensatedSum::new();
    for k in (1..n).rev() {
        head.add((k as f64).powf(-s));
    }
    let t = s - 1.0;
    let ln_n = nf.ln();
    // (N^{1-s} - 1)/(s - 1), continuous through s = 1
    let pole_split = if t == 0.0 {
        -ln_n
    } else {
        (-t * ln_n).exp_m1() / t
    };
    let n_pow = nf.powf(-s);
    let mut correction = 0.0;
    let mut poch = s;
    let mut npow = n_pow / nf;
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        correction += coeff * poch * npow;
        let kk = (2 * k + 1) as f64;
        poch *= (s + kk) * (s + kk + 1.0);
        npow /= nf * nf;
    }
    head.value() + pole_split + 0.5 * n_pow + correction
}

/// Riemann zeta for real `s != 1`; negative arguments go through the
/// reflection formula.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if s.is_nan() {
        return Err(Error::Domain {
            function: "riemann_zeta",
            reason: "argument is NaN".into(),
        });
    }
    if s == 1.0 {
        return Err(Error::Pole {
            factor: "zeta",
            at: 1.0,
        });
    }
    if s >= 0.0 {
        if s > 60.0 {
            return Ok(1.0 + 2f64.powf(-s) + 3f64.powf(-s));
        }
        return Ok(zeta_em_regular(s) + 1.0 / (s - 1.0));
    }
    if s == s.floor() && (s as i64) % 2 == 0 {
        return Ok(0.0);
    }
    // zeta(s) = Gamma((1-s)/2) / Gamma(s/2) * pi^{s - 1/2} * zeta(1 - s)
    let g = gamma(0.5 * (1.0 - s))?;
    Ok(g * rgamma(0.5 * s) * PI.powf(s - 0.5) * riemann_zeta(1.0 - s)?)
}

/// `zeta(s) - 1/(s - 1)`, finite through `s = 1` where it equals Euler's constant.
pub fn zeta_minus_pole(s: f64) -> Result<f64> {
    if !((s - 1.0).abs() < 0.5) {
        return Err(Error::Domain {
            function: "zeta_minus_pole",
            reason: format!("requires |s - 1| < 1/2, got s = {s}"),
        });
    }
    Ok(zeta_em_regular(s))
}

fn bessel_domain(nu: f64, z: f64) -> Result<()> {
    if !(z > 0.0) || z.is_nan() {
        return Err(Error::Domain {
            function: "bessel_k",
            reason: format!("argument must be positive, got z = {z}"),
        });
    }
    if !(nu.abs() <= BESSEL_ORDER_MAX) {
        return Err(Error::Domain {
            function: "bessel_k",
            reason: format!("order must satisfy |nu| <= {BESSEL_ORDER_MAX}, got {nu}"),
        });
    }
    Ok(())
}

/// Modified Bessel function of the second kind `K_nu(z)` for real order
/// (|nu| <= 60) and z > 0.
///
/// Half-integer orders use the terminating closed form. Other orders reduce
/// to |mu| <= 1/2, evaluate `K_mu, K_{mu+1}` by Temme's series (z < 2) or
/// Steed's continued fraction (z >= 2), then recur upward, which is stable
/// for `K`. Beyond the exponent range the result underflows to zero.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64> {
    bessel_domain(nu, z)?;
    if z.is_infinite() {
        return Ok(0.0);
    }
    let nu = nu.abs();
    let scaled = bessel_k_scaled(nu, z)?;
    Ok(scaled * (-z).exp())
}

/// `exp(z) K_nu(z)`.
pub fn bessel_k_scaled(nu: f64, z: f64) -> Result<f64> {
    bessel_domain(nu, z)?;
    let nu = nu.abs();
    let twice = 2.0 * nu;
    let value = if twice == twice.floor() && (twice as i64) % 2 == 1 {
        half_integer_k_scaled((nu - 0.5) as u32, z)
    } else {
        general_k_scaled(nu, z)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            function: "bessel_k",
        })
    }
}

/// `exp(z) K_{n+1/2}(z) = sqrt(pi/2z) sum_k (n+k)!/(k!(n-k)!) (2z)^{-k}`.
fn half_integer_k_scaled(n: u32, z: f64) -> f64 {
    let w = 0.5 / z;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut a = 1.0;
    coeffs.push(a);
    for k in 0..n {
        a *= f64::from(n + k + 1) * f64::from(n - k) / f64::from(k + 1);
        coeffs.push(a);
    }
    let poly = coeffs.iter().rev().fold(0.0, |acc, &c| acc * w + c);
    (FRAC_PI_2 / z).sqrt() * poly
}

fn general_k_scaled(nu: f64, x: f64) -> f64 {
    const EPS: f64 = 1e-17;
    const MAXIT: usize = 10_000;

    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let mu2 = mu * mu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let (mut k_mu, mut k_mu1, scaled) = if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        (sum, sum1 * xi2, false)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        let k_mu = (FRAC_PI_2 * xi).sqrt() / s;
        let k_mu1 = k_mu * (mu + x + 0.5 - h) * xi;
        (k_mu, k_mu1, true)
    };

    for i in 1..=(nl as usize) {
        let next = (mu + i as f64) * xi2 * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    if scaled {
        k_mu
    } else {
        k_mu * x.exp()
    }
}

/// Temme's auxiliary Gamma combinations for |mu| <= 1/2:
/// `gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu)`, `gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2`,
/// together with `1/G(1+mu)` and `1/G(1-mu)`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut odd = 0.0;
    let mut even = 0.0;
    let mu2 = mu * mu;
    // sum over odd k of c_k mu^{k-1} and even k of c_k mu^k, both in powers of mu^2
    for pair in RGAMMA_TAYLOR.chunks(2).rev() {
        even = even * mu2 + pair[0];
        if let Some(&c_odd) = pair.get(1) {
            odd = odd * mu2 + c_odd;
        } else {
            odd *= mu2;
        }
    }
    let gam1 = -odd;
    let gam2 = even;
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (gam1, gam2, gampl, gammi)
}
