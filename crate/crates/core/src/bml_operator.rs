//! The normalized Barnes-Mittag-Leffler kernel
//! `𝓔(z) = a^s Γ(ϑ) z⁻¹ E^a_{K,ϑ}(z; s) = 1/z + Σ hₙ zⁿ⁻¹` and the operator
//! `𝓑f = 𝓔 ∗ f` acting coefficientwise on [`SigmaSeries`].

use num_complex::Complex64;

use crate::laurent::{hadamard, SigmaSeries};
use crate::special_fn::{gamma_pos, ln_gamma_pos, BmlParams};
use crate::{Error, Result};

/// Truncation order used by every class check unless overridden.
pub const DEFAULT_ORDER: usize = 64;

/// `hₙ = a^s Γ(ϑ) / (Γ(Kn+ϑ−K)(n+a−1)^s)` for `n ≥ 1`.
pub fn coefficient_h(n: usize, params: &BmlParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("kernel coefficients are indexed from 1"));
    }
    let (k, theta, a, s) = (params.k(), params.theta(), params.a(), params.s());
    let m = (n - 1) as f64;
    let arg = k * m + theta;
    let h = if arg <= 170.0 && theta <= 170.0 {
        // a/(n+a−1) ≤ 1 keeps the power factor in range; n = 1 gives 1 exactly.
        (a / (m + a)).powf(s) * (gamma_pos(theta)? / gamma_pos(arg)?)
    } else {
        (s * (a / (m + a)).ln() + ln_gamma_pos(theta)? - ln_gamma_pos(arg)?).exp()
    };
    if !(h.is_normal() && h > 0.0) {
        return Err(Error::Range(format!(
            "kernel coefficient h_{n} = {h:e} is outside the normal binary64 range"
        )));
    }
    Ok(h)
}

/// Precomputed `h₁..h_N` together with the kernel series `𝓔`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorKernel {
    params: BmlParams,
    h: Vec<f64>,
    series: SigmaSeries,
}

impl OperatorKernel {
    pub fn params(&self) -> &BmlParams {
        &self.params
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn series(&self) -> &SigmaSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.h.len()
    }
}

pub fn build_kernel(params: &BmlParams, order: usize) -> Result<OperatorKernel> {
    if order == 0 {
        return Err(Error::domain("kernel order must be at least 1"));
    }
    let h = (1..=order)
        .map(|n| coefficient_h(n, params))
        .collect::<Result<Vec<_>>>()?;
    let series = SigmaSeries::new(
        Complex64::new(1.0, 0.0),
        h.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
    );
    Ok(OperatorKernel {
        params: *params,
        h,
        series,
    })
}

/// `𝓑f = 𝓔 ∗ f`.
pub fn apply_operator(f: &SigmaSeries, kernel: &OperatorKernel) -> SigmaSeries {
    hadamard(kernel.series(), f)
}

/// Coefficientwise inverse of [`apply_operator`]: `cₙ ↦ cₙ / hₙ`.
pub fn invert_operator(g: &SigmaSeries, kernel: &OperatorKernel) -> SigmaSeries {
    SigmaSeries::new(
        g.principal,
        g.tail.iter().zip(&kernel.h).map(|(c, h)| c / *h).collect(),
    )
}
