//! Gamma on the positive reals and the Mittag-Leffler family.
//!
//! The two-parameter function `E_{K,ϑ}(z) = Σ zⁿ / Γ(Kn+ϑ)` and the Barnes
//! generalization `E^a_{K,ϑ}(z; s) = Σ zⁿ / (Γ(Kn+ϑ)(n+a)^s)` are summed
//! forward in `n` with compensated accumulation. The number of terms comes
//! from [`truncation_order`], which stops once the term ratio is provably
//! below one half and twice the first omitted term is under the tolerance.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numeric::ComplexSum;
use crate::{Error, Result};

/// Largest argument for which `Γ(x)` is finite in binary64.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Absolute tail tolerance used by [`mittag_leffler_2p`] and [`barnes_ml`].
pub const SERIES_TOL: f64 = 1e-17;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 200_000;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Parameters `(K, ϑ, a, s)` of the Barnes-Mittag-Leffler function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmlParams {
    k: f64,
    theta: f64,
    a: f64,
    s: f64,
}

impl BmlParams {
    /// Requires `K > 0`, `ϑ > 0`, `a > 0`, `s ≥ 0`, all finite.
    pub fn new(k: f64, theta: f64, a: f64, s: f64) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(k) {
            return Err(Error::domain(format!("K must be a positive real, got {k}")));
        }
        if !positive(theta) {
            return Err(Error::domain(format!(
                "theta must be a positive real, got {theta}"
            )));
        }
        if !positive(a) {
            return Err(Error::domain(format!("a must be a positive real, got {a}")));
        }
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::domain(format!(
                "s must be a nonnegative real, got {s}"
            )));
        }
        Ok(Self { k, theta, a, s })
    }

    /// `(K, ϑ, a, s) = (1, 1, 1, 0)`, for which `E^a_{K,ϑ}(z; s) = eᶻ`.
    pub fn exponential() -> Self {
        Self {
            k: 1.0,
            theta: 1.0,
            a: 1.0,
            s: 0.0,
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

fn lanczos_sum(xm1: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| {
            acc + c / (xm1 + (i + 1) as f64)
        })
}

fn gamma_lanczos(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_lanczos(1.0 - x));
    }
    let xm1 = x - 1.0;
    let w = xm1 + LANCZOS_G + 0.5;
    // w^(x-1/2) is split in two halves so large arguments do not overflow
    // before the exp(-w) factor is applied.
    let half_pow = w.powf((xm1 + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half_pow * (-w).exp() * half_pow * lanczos_sum(xm1)
}

/// `Γ(x)` for `0 < x ≤` [`GAMMA_MAX_ARG`].
///
/// Integers take an exact-product path. Other arguments use a `g = 7`,
/// nine-term Lanczos approximation on `(0, 2]`, extended upward by the
/// recurrence.
pub fn gamma_pos(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!(
            "gamma_pos needs a positive argument, got {x}"
        )));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Range(format!("Gamma({x}) overflows binary64")));
    }
    if x == x.floor() {
        let n = x as u32;
        return Ok((2..n).fold(1.0, |acc, k| acc * k as f64));
    }
    if x <= 2.0 {
        return Ok(gamma_lanczos(x));
    }
    // Γ(x) = Γ(x − n)·Π_{m=1}^{n} (x − m) with x − n in (1, 2); every factor
    // x − m is exact, which keeps the error well below that of the Lanczos
    // power term at large x.
    let n = x.floor() as u32 - 1;
    Ok((1..=n).fold(gamma_lanczos(x - n as f64), |acc, m| acc * (x - m as f64)))
}

/// `ln Γ(x)` for `x > 0`, with no upper limit.
pub fn ln_gamma_pos(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!(
            "ln_gamma_pos needs a positive argument, got {x}"
        )));
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if x <= 170.0 {
        return Ok(gamma_pos(x)?.ln());
    }
    let xm1 = x - 1.0;
    let w = xm1 + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (xm1 + 0.5) * w.ln() - w + lanczos_sum(xm1).ln())
}

/// `1 / (Γ(Kn+ϑ)(n+a)^s)`, switching to log space when the Gamma value
/// would overflow.
fn barnes_coefficient(params: &BmlParams, n: usize) -> Result<f64> {
    let arg = params.k * n as f64 + params.theta;
    let shift = n as f64 + params.a;
    if arg <= 170.0 {
        Ok(1.0 / (gamma_pos(arg)? * shift.powf(params.s)))
    } else {
        Ok((-ln_gamma_pos(arg)? - params.s * shift.ln()).exp())
    }
}

fn sum_series(
    z: Complex64,
    terms: usize,
    coeff: impl Fn(usize) -> Result<f64>,
) -> Result<Complex64> {
    let mut acc = ComplexSum::default();
    let mut power = Complex64::new(1.0, 0.0);
    for n in 0..terms {
        acc.add(power * coeff(n)?);
        power *= z;
    }
    Ok(acc.value())
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("argument {z} is not finite")))
    }
}

/// Number of leading terms `N` (indices `0..N`) of the Barnes series at
/// modulus `radius` such that the omitted tail is provably below `tol`.
///
/// The ratio of consecutive terms is bounded by
/// `ρₙ = radius · Γ(Kn+ϑ)/Γ(Kn+K+ϑ)`, which is nonincreasing in `n` because
/// `ln Γ` is convex. Once `ρ_N ≤ 1/2` the tail `Σ_{n≥N} tₙ` is at most
/// `2 t_N`; the returned `N` is the smallest `N ≥ 1` where both conditions
/// hold.
pub fn truncation_order(params: &BmlParams, radius: f64, tol: f64) -> Result<usize> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::domain(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::domain(format!(
            "radius must be a positive real, got {radius}"
        )));
    }
    let ln_radius = radius.ln();
    let ln_tol = tol.ln();
    let ln_half = 0.5f64.ln();
    let mut ln_gamma_here = ln_gamma_pos(params.k + params.theta)?;
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        let ln_gamma_next = ln_gamma_pos(params.k * (nf + 1.0) + params.theta)?;
        let ln_ratio_bound = ln_radius + ln_gamma_here - ln_gamma_next;
        if ln_ratio_bound <= ln_half {
            let ln_term = nf * ln_radius - ln_gamma_here - params.s * (nf + params.a).ln();
            if std::f64::consts::LN_2 + ln_term < ln_tol {
                return Ok(n);
            }
        }
        ln_gamma_here = ln_gamma_next;
    }
    Err(Error::NonConvergent(MAX_TERMS))
}

/// `E_{K,ϑ}(z) = Σ zⁿ / Γ(Kn+ϑ)`.
pub fn mittag_leffler_2p(k: f64, theta: f64, z: Complex64) -> Result<Complex64> {
    let params = BmlParams::new(k, theta, 1.0, 0.0)?;
    check_finite(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0 / gamma_pos(theta)?, 0.0));
    }
    let terms = truncation_order(&params, z.norm(), SERIES_TOL)?;
    sum_series(z, terms, |n| {
        let arg = k * n as f64 + theta;
        if arg <= 170.0 {
            Ok(1.0 / gamma_pos(arg)?)
        } else {
            Ok((-ln_gamma_pos(arg)?).exp())
        }
    })
}

/// `E^a_{K,ϑ}(z; s) = Σ zⁿ / (Γ(Kn+ϑ)(n+a)^s)`.
pub fn barnes_ml(params: &BmlParams, z: Complex64) -> Result<Complex64> {
    check_finite(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(barnes_coefficient(params, 0)?, 0.0));
    }
    let terms = truncation_order(params, z.norm(), SERIES_TOL)?;
    barnes_ml_terms(params, z, terms)
}

/// Partial sum of the Barnes series over indices `0..terms`.
pub fn barnes_ml_terms(params: &BmlParams, z: Complex64, terms: usize) -> Result<Complex64> {
    check_finite(z)?;
    sum_series(z, terms, |n| barnes_coefficient(params, n))
}
