//! Convolution criteria for the spirallike class.
//!
//! With `F = 𝓑f` and `E(x) = −Φ(x)` for `|x| = 1`, membership is equivalent
//! to `H_x(z) = zF′(z) + E(x)F(z) ≠ 0` on the punctured disc for every
//! boundary direction `x`. Two kernels realize `H_x` as a Hadamard product:
//!
//! - `t1`: `F ∗ (1 − εz)/(z(1 − z)²)` with `ε = (2 − E)/(1 − E)`, which equals
//!   `H_x/(E − 1)`;
//! - `t2`: `f ∗ k` with `k = (E − 1)/z + Σ (n − 1 + E) hₙ zⁿ⁻¹`, which equals
//!   `H_x` itself.
//!
//! Each scanned function has a simple pole at the origin, so the number of
//! zeros inside `|z| < r` is its winding number around that circle plus one.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{ClassKind, ClassSpec, GridSpec, MembershipReport, Method, Verdict, Witness};
use crate::bml_operator::{apply_operator, OperatorKernel};
use crate::laurent::{hadamard, SigmaSeries};
use crate::{Error, Result};

/// `|1 − E(x)|` below this marks a degenerate direction.
const DEGENERATE_TOL: f64 = 1e-12;
const MAX_ARG_STEP: f64 = FRAC_PI_4;
const MAX_REFINE_DEPTH: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvKernel {
    T1,
    T2,
}

/// `ε = (2 − E)/(1 − E)` for the boundary direction `x`.
pub fn epsilon_t1(x: Complex64, spec: &ClassSpec) -> Result<Complex64> {
    let e = spec.boundary_value(x)?;
    epsilon_from_e(e, x)
}

fn epsilon_from_e(e: Complex64, x: Complex64) -> Result<Complex64> {
    let den = 1.0 - e;
    if den.norm() < DEGENERATE_TOL {
        return Err(Error::DegenerateDirection(x));
    }
    Ok((2.0 - e) / den)
}

/// Σ-basis expansion of `(1 − εz)/(z(1 − z)²)`: `1/z + Σ ((n+1) − εn) zⁿ⁻¹`.
fn t1_series(eps: Complex64, order: usize) -> SigmaSeries {
    SigmaSeries::new(
        Complex64::new(1.0, 0.0),
        (1..=order)
            .map(|n| (n + 1) as f64 - eps * n as f64)
            .collect(),
    )
}

fn t2_series(e: Complex64, kernel: &OperatorKernel) -> SigmaSeries {
    SigmaSeries::new(
        e - 1.0,
        kernel
            .h()
            .iter()
            .enumerate()
            .map(|(i, h)| (e + i as f64) * *h)
            .collect(),
    )
}

/// The convolution kernel for direction `x`, truncated at `order`.
pub fn kernel_series(
    x: Complex64,
    spec: &ClassSpec,
    order: usize,
    which: ConvKernel,
) -> Result<SigmaSeries> {
    let e = spec.boundary_value(x)?;
    let eps = epsilon_from_e(e, x)?;
    match which {
        ConvKernel::T1 => Ok(t1_series(eps, order)),
        ConvKernel::T2 => Ok(t2_series(e, &spec.kernel(order)?)),
    }
}

fn value_at(series: &SigmaSeries, r: f64, phi: f64) -> Result<Complex64> {
    let z = Complex64::from_polar(r, phi);
    let v = series.evaluate(z)?;
    if v == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular { z, modulus: 0.0 });
    }
    Ok(v)
}

fn arg_increment(
    series: &SigmaSeries,
    r: f64,
    a: (f64, Complex64),
    b: (f64, Complex64),
    depth: u32,
) -> Result<f64> {
    let step = (b.1 / a.1).arg();
    if step.abs() <= MAX_ARG_STEP || depth == 0 {
        return Ok(step);
    }
    let mid_phi = 0.5 * (a.0 + b.0);
    let mid = (mid_phi, value_at(series, r, mid_phi)?);
    Ok(arg_increment(series, r, a, mid, depth - 1)? + arg_increment(series, r, mid, b, depth - 1)?)
}

/// Winding number of `series` around the origin along `|z| = r`, refining
/// adaptively wherever the argument moves by more than π/4 between samples.
pub(crate) fn winding_number(series: &SigmaSeries, r: f64, initial: usize) -> Result<i64> {
    let step = 2.0 * PI / initial as f64;
    let first = (0.0, value_at(series, r, 0.0)?);
    let mut prev = first;
    let mut total = 0.0;
    for j in 1..=initial {
        let next = if j == initial {
            (2.0 * PI, first.1)
        } else {
            let phi = step * j as f64;
            (phi, value_at(series, r, phi)?)
        };
        total += arg_increment(series, r, prev, next, MAX_REFINE_DEPTH)?;
        prev = next;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

struct DirectionScan {
    x: Complex64,
    zeros: i64,
    min_modulus: f64,
    min_z: Complex64,
}

/// Scans `H_x` over the grid for every boundary direction.
///
/// A direction fails when the argument principle finds a zero inside
/// `|z| < r_max`; the check also fails when the smallest sampled modulus is
/// below `grid.min_modulus()`. For the convex kind the scan runs on the
/// Alexander transform `−zf′` against the spirallike class.
pub fn check_convolution(
    f: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
    which: ConvKernel,
) -> Result<MembershipReport> {
    if f.principal != Complex64::new(1.0, 0.0) {
        return Err(Error::InvalidArgument(format!(
            "class membership needs principal part 1, got {}",
            f.principal
        )));
    }
    let (g, spec) = match spec.kind {
        ClassKind::Spirallike => (f.clone(), spec.clone()),
        ClassKind::Convex => (f.alexander(), spec.with_kind(ClassKind::Spirallike)),
    };
    let kernel = spec.kernel(g.order())?;
    let image = apply_operator(&g, &kernel);
    let points = grid.sample_points();
    let r_max = grid.r_max();

    let scans = grid
        .boundary_points()
        .into_par_iter()
        .map(|x| {
            let e = match spec.boundary_value(x) {
                Ok(e) => e,
                Err(Error::Pole(_)) => return Ok(None),
                Err(err) => return Err(err),
            };
            let eps = match epsilon_from_e(e, x) {
                Ok(eps) => eps,
                Err(Error::DegenerateDirection(_)) => return Ok(None),
                Err(err) => return Err(err),
            };
            let series = match which {
                ConvKernel::T1 => hadamard(&image, &t1_series(eps, image.order())),
                ConvKernel::T2 => hadamard(&g, &t2_series(e, &kernel)),
            };
            let mut min_modulus = f64::INFINITY;
            let mut min_z = Complex64::new(0.0, 0.0);
            for &(_, _, z) in &points {
                let m = series.evaluate(z)?.norm();
                if m < min_modulus {
                    min_modulus = m;
                    min_z = z;
                }
            }
            let zeros = match winding_number(&series, r_max, grid.angles()) {
                Ok(w) => w + 1,
                // An exact zero on the sampled circle.
                Err(Error::Singular { .. }) => 1,
                Err(err) => return Err(err),
            };
            Ok(Some(DirectionScan {
                x,
                zeros,
                min_modulus,
                min_z,
            }))
        })
        .collect::<Result<Vec<_>>>()?;

    let skipped = scans.iter().filter(|s| s.is_none()).count();
    let scans: Vec<DirectionScan> = scans.into_iter().flatten().collect();
    if scans.is_empty() {
        return Err(Error::Inconclusive(
            "every boundary direction is degenerate".into(),
        ));
    }
    let method = match which {
        ConvKernel::T1 => Method::ConvT1,
        ConvKernel::T2 => Method::ConvT2,
    };

    if let Some(bad) = scans.iter().find(|s| s.zeros != 0) {
        return Ok(MembershipReport {
            verdict: Verdict::NonMember,
            margin: -bad.min_modulus,
            witness: Witness {
                z: bad.min_z,
                x: Some(bad.x),
            },
            method,
            skipped,
        });
    }
    let best = scans.iter().fold(&scans[0], |best, s| {
        if s.min_modulus < best.min_modulus {
            s
        } else {
            best
        }
    });
    Ok(MembershipReport {
        verdict: if best.min_modulus >= grid.min_modulus() {
            Verdict::Member
        } else {
            Verdict::NonMember
        },
        margin: best.min_modulus,
        witness: Witness {
            z: best.min_z,
            x: Some(best.x),
        },
        method,
        skipped,
    })
}
