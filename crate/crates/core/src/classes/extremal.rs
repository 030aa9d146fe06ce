use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{check_direct, ClassSpec, GridSpec};
use crate::laurent::{binomial_series, SigmaSeries};
use crate::{Error, Result};

const MAX_FACTOR: f64 = 1e6;
const BISECTION_REL_TOL: f64 = 1e-3;

/// `τ = (1 − α) e^{−iλ} cos λ`.
///
/// With this exponent `(1 − z)^{2τ}/z` has phase ratio
/// `−1 − 2τ z/(1 − z)`, whose rotated real part
/// `Re(e^{iλ} q) = −cos λ − 2(1 − α) cos λ · Re(z/(1 − z))` stays below
/// `−α cos λ` on the whole disc.
pub fn extremal_tau(alpha: f64, lambda: f64) -> Complex64 {
    Complex64::from_polar((1.0 - alpha) * lambda.cos(), -lambda)
}

/// `(1 − z)^{2τ}/z` truncated at `order`, extremal for the half-plane class
/// `Θ = Janowski(1 − 2α, −1)`.
pub fn extremal_function(alpha: f64, lambda: f64, order: usize) -> Result<SigmaSeries> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "alpha must lie in [0, 1), got {alpha}"
        )));
    }
    if !(lambda.is_finite() && lambda.abs() < FRAC_PI_2) {
        return Err(Error::domain(format!(
            "lambda must satisfy |lambda| < pi/2, got {lambda}"
        )));
    }
    let tau = extremal_tau(alpha, lambda);
    let d = binomial_series(tau * 2.0, Complex64::new(-1.0, 0.0), order);
    Ok(SigmaSeries::new(d[0], d[1..].to_vec()))
}

fn scaled(f: &SigmaSeries, index: usize, factor: f64) -> SigmaSeries {
    let mut g = f.clone();
    g.tail[index - 1] *= factor;
    g
}

/// Scales one tail coefficient of a member by the smallest factor `t > 1`
/// (to relative precision 1e-3) for which [`check_direct`] fails.
///
/// Coefficients of `z¹, z², …` are tried first, in order, and the constant
/// term last, since the convex ratio does not depend on it.
pub fn construct_nonmember(
    f: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
) -> Result<SigmaSeries> {
    if !check_direct(f, spec, grid)?.is_member() {
        return Err(Error::InvalidArgument(
            "construct_nonmember needs a member as its starting point".into(),
        ));
    }
    let fails = |g: &SigmaSeries| -> Result<bool> {
        match check_direct(g, spec, grid) {
            Ok(r) => Ok(!r.is_member()),
            // Not a certified failure: keep scaling.
            Err(Error::Inconclusive(_)) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let nonzero = |n: &usize| f.coeff(*n) != Complex64::new(0.0, 0.0);
    let candidates = (2..=f.order())
        .filter(nonzero)
        .chain((1..=f.order().min(1)).filter(nonzero));

    for index in candidates {
        let mut hi = 2.0;
        while hi <= MAX_FACTOR && !fails(&scaled(f, index, hi))? {
            hi *= 2.0;
        }
        if hi > MAX_FACTOR {
            continue;
        }
        let mut lo: f64 = 1.0;
        while hi / lo - 1.0 > BISECTION_REL_TOL {
            let mid = 0.5 * (lo + hi);
            if fails(&scaled(f, index, mid))? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return Ok(scaled(f, index, hi));
    }
    Err(Error::Construction(format!(
        "no single-coefficient scaling up to {MAX_FACTOR:e} leaves the class"
    )))
}
