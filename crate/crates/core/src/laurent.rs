//! Truncated Laurent series `p/z + Σ_{n=1}^{N} cₙ zⁿ⁻¹` with a simple pole
//! at the origin.
//!
//! Coefficients are stored 1-based in the mathematical sense: `tail[0]` is
//! `c₁` (the constant term), `tail[n-1]` multiplies `zⁿ⁻¹`.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::numeric::ComplexSum;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSeries {
    pub principal: Complex64,
    pub tail: Vec<Complex64>,
}

impl SigmaSeries {
    pub fn new(principal: Complex64, tail: Vec<Complex64>) -> Self {
        Self { principal, tail }
    }

    /// `1/z`.
    pub fn pole() -> Self {
        Self::new(ONE, Vec::new())
    }

    /// `1/z + Σ_{n≤N} zⁿ⁻¹`, the identity element of [`hadamard`].
    pub fn ones(order: usize) -> Self {
        Self::new(ONE, vec![ONE; order])
    }

    /// Series with real coefficients and principal part `1`.
    pub fn from_real_tail(tail: &[f64]) -> Self {
        Self::new(ONE, tail.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn order(&self) -> usize {
        self.tail.len()
    }

    /// Coefficient `cₙ` of `zⁿ⁻¹`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        assert!(n >= 1, "tail coefficients are indexed from 1");
        self.tail.get(n - 1).copied().unwrap_or(ZERO)
    }

    pub fn is_finite(&self) -> bool {
        std::iter::once(&self.principal)
            .chain(&self.tail)
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Zero-pads or truncates the tail to exactly `order` coefficients.
    pub fn with_order(mut self, order: usize) -> Self {
        self.tail.resize(order, ZERO);
        self
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(
            self.principal * factor,
            self.tail.iter().map(|c| c * factor).collect(),
        )
    }

    /// Value at `z ≠ 0`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z == ZERO {
            return Err(Error::Pole(z));
        }
        let mut acc = ComplexSum::default();
        acc.add(self.principal / z);
        let mut power = ONE;
        for c in &self.tail {
            acc.add(c * power);
            power *= z;
        }
        Ok(acc.value())
    }

    /// `z f′(z)`: principal `p ↦ −p`, `cₙ ↦ (n−1)cₙ`.
    pub fn z_fprime(&self) -> Self {
        Self::new(
            -self.principal,
            self.tail
                .iter()
                .enumerate()
                .map(|(i, c)| c * i as f64)
                .collect(),
        )
    }

    /// `−z f′(z)`, the Alexander transform. The constant term maps to zero.
    pub fn alexander(&self) -> Self {
        Self::new(
            self.principal,
            self.tail
                .iter()
                .enumerate()
                .map(|(i, c)| c * -(i as f64))
                .collect(),
        )
    }
}

/// Coefficientwise product; the result has the shorter operand's order.
pub fn hadamard(f: &SigmaSeries, g: &SigmaSeries) -> SigmaSeries {
    SigmaSeries::new(
        f.principal * g.principal,
        f.tail.iter().zip(&g.tail).map(|(a, b)| a * b).collect(),
    )
}

impl Add for &SigmaSeries {
    type Output = SigmaSeries;

    /// Coefficientwise sum, zero-padding the shorter operand.
    fn add(self, rhs: &SigmaSeries) -> SigmaSeries {
        let order = self.order().max(rhs.order());
        SigmaSeries::new(
            self.principal + rhs.principal,
            (1..=order).map(|n| self.coeff(n) + rhs.coeff(n)).collect(),
        )
    }
}

impl Mul<Complex64> for &SigmaSeries {
    type Output = SigmaSeries;

    fn mul(self, rhs: Complex64) -> SigmaSeries {
        self.scale(rhs)
    }
}

/// Taylor coefficients `d₀..d_N` of `(1 + wz)^β` on the principal branch.
pub fn binomial_series(beta: Complex64, w: Complex64, order: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(order + 1);
    let mut d = ONE;
    out.push(d);
    for k in 0..order {
        d = d * w * (beta - k as f64) / (k + 1) as f64;
        out.push(d);
    }
    out
}
