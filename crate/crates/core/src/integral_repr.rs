//! Members of the classes built from a Schwarz function `ω`.
//!
//! For the spirallike class the image `𝓑f` satisfies
//!
//! ```text
//! 𝓑f(z) = z⁻¹ exp(−e^{−iλ} ∫₀ᶻ cos λ · [Θ(ω(ξ)) − 1]/ξ dξ),
//! ```
//!
//! which [`bml_from_schwarz`] evaluates by Gauss-Legendre quadrature and
//! [`reconstruct_f`] expands as a power series before undoing the operator.
//! For the convex class the image is the Σ-basis antiderivative of
//! `−η⁻² exp(…)`, i.e. the function whose Alexander transform is the
//! spirallike image above.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bml_operator::{invert_operator, OperatorKernel};
use crate::classes::{ClassKind, ClassSpec, ThetaSpec};
use crate::laurent::SigmaSeries;
use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

/// Boundary samples used to bound `|ω|`.
pub const SCHWARZ_BOUND_SAMPLES: usize = 2048;

/// Largest `|z⁰|` coefficient tolerated by the convex reconstruction.
pub const LOG_OBSTRUCTION_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Polynomial Schwarz function `ω(z) = Σ_{k=1}^{M} wₖ zᵏ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzSpec {
    coefficients: Vec<Complex64>,
}

fn max_modulus_on_circle(coefficients: &[Complex64], r: f64) -> f64 {
    (0..SCHWARZ_BOUND_SAMPLES)
        .map(|k| {
            let x = Complex64::from_polar(r, 2.0 * PI * k as f64 / SCHWARZ_BOUND_SAMPLES as f64);
            poly_eval(coefficients, x).norm()
        })
        .fold(0.0, f64::max)
}

/// `Σ cₖ zᵏ⁺¹` for `coefficients = [c₀, c₁, …]`.
fn poly_eval(coefficients: &[Complex64], z: Complex64) -> Complex64 {
    poly_eval_over_z(coefficients, z) * z
}

/// `Σ cₖ zᵏ` for `coefficients = [c₀, c₁, …]`.
fn poly_eval_over_z(coefficients: &[Complex64], z: Complex64) -> Complex64 {
    coefficients.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

impl SchwarzSpec {
    /// `coefficients = [w₁, …, w_M]`; rejects `ω` whose sampled modulus on
    /// `|z| = 0.999` reaches 1.
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::domain("Schwarz coefficients must be finite"));
        }
        let bound = max_modulus_on_circle(&coefficients, 0.999);
        if bound >= 1.0 {
            return Err(Error::domain(format!(
                "sampled |omega| on |z| = 0.999 reaches {bound}, not a Schwarz function"
            )));
        }
        Ok(Self { coefficients })
    }

    /// Rescales `coefficients` so the sampled maximum of `|ω|` on the unit
    /// circle equals `bound`.
    pub fn scaled_to_bound(coefficients: Vec<Complex64>, bound: f64) -> Result<Self> {
        if !(bound > 0.0 && bound < 1.0) {
            return Err(Error::domain(format!(
                "bound must lie in (0, 1), got {bound}"
            )));
        }
        let current = max_modulus_on_circle(&coefficients, 1.0);
        if !(current > 0.0 && current.is_finite()) {
            return Err(Error::domain("cannot rescale the zero Schwarz function"));
        }
        let factor = bound / current;
        Self::new(coefficients.into_iter().map(|c| c * factor).collect())
    }

    pub fn zero() -> Self {
        Self {
            coefficients: Vec::new(),
        }
    }

    pub fn identity() -> Self {
        Self {
            coefficients: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// `[w₁, …, w_M]`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.coefficients, z)
    }

    /// `ω(z)/z`, analytic at the origin with value `w₁`.
    pub fn eval_over_z(&self, z: Complex64) -> Complex64 {
        poly_eval_over_z(&self.coefficients, z)
    }

    /// `max |ω(0.999·x)|` over the boundary samples.
    pub fn sampled_bound(&self) -> f64 {
        max_modulus_on_circle(&self.coefficients, 0.999)
    }
}

/// `cos λ · [Θ(ω(ξ)) − 1]/ξ`, evaluated as `cos λ · R(ω(ξ)) · ω(ξ)/ξ` with
/// `R(u) = (Θ(u) − 1)/u` so the removable singularity at `ξ = 0` needs no
/// special case.
pub fn integrand(spec: &ClassSpec, omega: &SchwarzSpec, xi: Complex64) -> Result<Complex64> {
    if xi.norm().is_nan() || xi.norm() >= 1.0 {
        return Err(Error::domain(format!("integrand needs |xi| < 1, got {xi}")));
    }
    let u = omega.eval(xi);
    let reduced = spec.theta.eval_reduced(u).map_err(|_| Error::Pole(xi))?;
    Ok(reduced * omega.eval_over_z(xi) * spec.lambda.cos())
}

fn check_disc_point(z: Complex64) -> Result<()> {
    if z == ZERO {
        return Err(Error::Pole(z));
    }
    if z.norm().is_nan() || z.norm() >= 1.0 {
        return Err(Error::domain(format!(
            "z must lie in the punctured unit disc, got {z}"
        )));
    }
    Ok(())
}

/// `z⁻¹ exp(−e^{−iλ} ∫₀ᶻ integrand)` with an `nodes`-point Gauss-Legendre
/// rule on the segment `[0, z]`.
pub fn bml_from_schwarz(
    spec: &ClassSpec,
    omega: &SchwarzSpec,
    z: Complex64,
    nodes: usize,
) -> Result<Complex64> {
    check_disc_point(z)?;
    if nodes < 8 {
        return Err(Error::domain(format!(
            "need at least 8 quadrature nodes, got {nodes}"
        )));
    }
    let rule = GaussLegendre::new(nodes)?;
    let integral = rule.integrate_segment(ZERO, z, |xi| integrand(spec, omega, xi))?;
    let rot = Complex64::from_polar(1.0, -spec.lambda);
    Ok((-rot * integral).exp() / z)
}

/// Closed form of [`bml_from_schwarz`] for Janowski `Θ` and `ω(z) = z`:
/// `z⁻¹(1 + Bz)^γ` with `γ = −e^{−iλ} cos λ (A − B)/B`, or
/// `z⁻¹ exp(−e^{−iλ} cos λ · A z)` when `B = 0`.
pub fn closed_form_janowski(spec: &ClassSpec, z: Complex64) -> Result<Complex64> {
    check_disc_point(z)?;
    let ThetaSpec::Janowski { a, b } = spec.theta else {
        return Err(Error::InvalidArgument(
            "closed form exists for Janowski Theta only".into(),
        ));
    };
    let rot = Complex64::from_polar(spec.lambda.cos(), -spec.lambda);
    if b == 0.0 {
        return Ok((-rot * a * z).exp() / z);
    }
    let gamma = -rot * ((a - b) / b);
    Ok((1.0 + z * b).powc(gamma) / z)
}

/// Truncated product of two power series.
fn series_mul(p: &[Complex64], q: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; len];
    for (i, a) in p.iter().enumerate().take(len) {
        if *a == ZERO {
            continue;
        }
        for (j, b) in q.iter().enumerate().take(len - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// Taylor coefficients `0..=order` of `Θ(ω(ξ)) − 1`.
pub fn theta_of_omega_series(
    theta: &ThetaSpec,
    omega: &SchwarzSpec,
    order: usize,
) -> Vec<Complex64> {
    let len = order + 1;
    let mut w = vec![ZERO; len];
    for (k, c) in omega.coefficients().iter().enumerate() {
        if k + 1 < len {
            w[k + 1] = *c;
        }
    }
    match theta {
        ThetaSpec::Janowski { a, b } => {
            // q = ω/(1 + Bω): q_k = w_k − B Σ_{j=1}^{k−1} w_j q_{k−j}
            let mut q = vec![ZERO; len];
            for k in 1..len {
                let conv: Complex64 = (1..k).map(|j| w[j] * q[k - j]).sum();
                q[k] = w[k] - conv * *b;
            }
            q.into_iter().map(|c| c * (a - b)).collect()
        }
        ThetaSpec::Polynomial(t) => {
            // Horner in series arithmetic: Σ_{k≥1} t_k ω^k
            let mut acc = vec![ZERO; len];
            for tk in t[1..].iter().rev() {
                acc = series_mul(&acc, &w, len);
                acc[0] += tk;
            }
            series_mul(&acc, &w, len)
        }
    }
}

/// Coefficients `0..=order` of `exp(P)` for a series `P` with `P(0) = 0`,
/// from `m·E_m = Σ_{k=1}^{m} k·P_k·E_{m−k}`.
pub fn exp_series(p: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut e = vec![ZERO; order + 1];
    e[0] = p.first().copied().unwrap_or(ZERO).exp();
    for m in 1..=order {
        let acc: Complex64 = (1..=m.min(p.len().saturating_sub(1)))
            .map(|k| p[k] * e[m - k] * k as f64)
            .sum();
        e[m] = acc / m as f64;
    }
    e
}

/// Taylor coefficients `0..=order` of `exp(−e^{−iλ} ∫₀ᶻ integrand)`, so that
/// `z⁻¹` times this series is the spirallike image.
pub fn exp_integral_series(spec: &ClassSpec, omega: &SchwarzSpec, order: usize) -> Vec<Complex64> {
    let s = theta_of_omega_series(&spec.theta, omega, order);
    let scale = -Complex64::from_polar(spec.lambda.cos(), -spec.lambda);
    let mut p = vec![ZERO; order + 1];
    for k in 1..=order {
        p[k] = scale * s[k] / k as f64;
    }
    exp_series(&p, order)
}

/// Recovers `f` (order `order`) from a Schwarz function for the class kind
/// of `spec`, by building `𝓑f` as a series and dividing out `hₙ`.
pub fn reconstruct_f(
    spec: &ClassSpec,
    omega: &SchwarzSpec,
    kernel: &OperatorKernel,
    order: usize,
) -> Result<SigmaSeries> {
    if kernel.order() < order {
        return Err(Error::InvalidArgument(format!(
            "kernel order {} is shorter than the requested order {order}",
            kernel.order()
        )));
    }
    let e = exp_integral_series(spec, omega, order);
    let image = match spec.kind {
        ClassKind::Spirallike => SigmaSeries::new(e[0], e[1..].to_vec()),
        ClassKind::Convex => {
            // ∫ −η⁻² Σ eₘ ηᵐ dη = e₀/η − e₁ log η − Σ_{m≥2} eₘ η^{m−1}/(m−1)
            if order >= 1 && e[1].norm() > LOG_OBSTRUCTION_TOL {
                return Err(Error::LogObstruction(e[1]));
            }
            let tail = (1..=order)
                .map(|n| if n == 1 { ZERO } else { -e[n] / (n - 1) as f64 })
                .collect();
            SigmaSeries::new(e[0], tail)
        }
    };
    Ok(invert_operator(&image, kernel))
}
