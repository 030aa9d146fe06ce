//! Membership in the spirallike class `S^λ_{K,ϑ}(Θ)` and the convex class
//! `K^λ_{K,ϑ}(Θ)`.
//!
//! Both classes ask whether a phase ratio of `𝓑f` is subordinate to
//!
//! ```text
//! Φ(z) = −e^{−iλ}(cos λ · Θ(z) + i sin λ),
//! ```
//!
//! with `q = z(𝓑f)′/𝓑f` for the spirallike class and
//! `q = 1 + z(𝓑f)″/(𝓑f)′` for the convex class. For univalent `Φ` with
//! `q(0⁺) = −1 = Φ(0)`, subordination is range containment `q(𝔹*) ⊆ Φ(𝔹)`,
//! which [`check_direct`] samples on a polar grid. The convolution routes
//! ([`check_convolution`]) instead decide whether
//! `z(𝓑f)′ + E(x)·𝓑f` vanishes in the disc for boundary directions `x`.

mod convolution;
mod direct;
mod extremal;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::bml_operator::{apply_operator, build_kernel, OperatorKernel};
use crate::laurent::SigmaSeries;
use crate::special_fn::BmlParams;
use crate::{Error, Result};

pub use convolution::{check_convolution, epsilon_t1, kernel_series, ConvKernel};
pub use direct::{
    boundary_curve, check_alexander, check_direct, check_direct_image, phase_ratio, CurveSample,
};
pub use extremal::{construct_nonmember, extremal_function, extremal_tau};

/// Boundary samples used for the polygonal fallback of polynomial `Θ`.
pub const POLYGON_SAMPLES: usize = 4096;

/// Minimum modulus used by [`phase_ratio`] when no grid is supplied.
pub const DEFAULT_MIN_MODULUS: f64 = 1e-9;

/// `Θ`, normalized so that `Θ(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum ThetaSpec {
    /// `(1 + Az)/(1 + Bz)` with `−1 ≤ B < A ≤ 1`.
    Janowski { a: f64, b: f64 },
    /// `Σ tₖ zᵏ` with `t₀ = 1`.
    Polynomial(Vec<Complex64>),
}

impl ThetaSpec {
    pub fn janowski(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && -1.0 <= b && b < a && a <= 1.0) {
            return Err(Error::domain(format!(
                "Janowski parameters need -1 <= B < A <= 1, got A = {a}, B = {b}"
            )));
        }
        Ok(ThetaSpec::Janowski { a, b })
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.first() != Some(&Complex64::new(1.0, 0.0)) {
            return Err(Error::domain("polynomial Theta must have constant term 1"));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::domain(
                "polynomial Theta coefficients must be finite",
            ));
        }
        Ok(ThetaSpec::Polynomial(coeffs))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            ThetaSpec::Janowski { a, b } => {
                let den = 1.0 + z * *b;
                if den.norm() < 1e-15 {
                    return Err(Error::Pole(z));
                }
                Ok((1.0 + z * *a) / den)
            }
            ThetaSpec::Polynomial(t) => Ok(t
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)),
        }
    }

    /// `(Θ(u) − 1)/u`, free of cancellation near `u = 0`.
    pub(crate) fn eval_reduced(&self, u: Complex64) -> Result<Complex64> {
        match self {
            ThetaSpec::Janowski { a, b } => {
                let den = 1.0 + u * *b;
                if den.norm() < 1e-15 {
                    return Err(Error::Pole(u));
                }
                Ok((a - b) / den)
            }
            ThetaSpec::Polynomial(t) => Ok(t[1..]
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + c)),
        }
    }

    pub fn derivative_at_zero(&self) -> Complex64 {
        match self {
            ThetaSpec::Janowski { a, b } => Complex64::new(a - b, 0.0),
            ThetaSpec::Polynomial(t) => t.get(1).copied().unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Spirallike,
    Convex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassSpec {
    pub lambda: f64,
    pub theta: ThetaSpec,
    pub kind: ClassKind,
    pub params: BmlParams,
}

impl ClassSpec {
    pub fn new(lambda: f64, theta: ThetaSpec, kind: ClassKind, params: BmlParams) -> Result<Self> {
        if !(lambda.is_finite() && lambda.abs() < FRAC_PI_2) {
            return Err(Error::domain(format!(
                "lambda must satisfy |lambda| < pi/2, got {lambda}"
            )));
        }
        Ok(Self {
            lambda,
            theta,
            kind,
            params,
        })
    }

    pub fn with_kind(&self, kind: ClassKind) -> Self {
        Self {
            kind,
            ..self.clone()
        }
    }

    /// `𝓑f` at the order of `f`.
    pub fn image_of(&self, f: &SigmaSeries) -> Result<SigmaSeries> {
        Ok(apply_operator(f, &self.kernel(f.order())?))
    }

    pub(crate) fn kernel(&self, order: usize) -> Result<OperatorKernel> {
        build_kernel(&self.params, order.max(1))
    }

    /// `E(x) = e^{−iλ}(cos λ · Θ(x) + i sin λ) = −Φ(x)`.
    pub fn boundary_value(&self, x: Complex64) -> Result<Complex64> {
        Ok(-target_value(self, x)?)
    }
}

/// Polar sampling of the punctured disc plus boundary directions.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    radii: Vec<f64>,
    angles: usize,
    boundary_x: usize,
    min_modulus: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::uniform(0.99, 24, 256, 512, 1e-9).expect("default grid is valid")
    }
}

impl GridSpec {
    pub fn new(
        radii: Vec<f64>,
        angles: usize,
        boundary_x: usize,
        min_modulus: f64,
    ) -> Result<Self> {
        if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::domain(
                "grid radii must be nonempty and lie in (0, 1)",
            ));
        }
        if angles < 8 || boundary_x < 8 {
            return Err(Error::domain("grid sample counts must be at least 8"));
        }
        if !(min_modulus.is_finite() && min_modulus > 0.0) {
            return Err(Error::domain("minimum modulus must be a positive real"));
        }
        Ok(Self {
            radii,
            angles,
            boundary_x,
            min_modulus,
        })
    }

    /// `count` equally spaced radii `r_max·k/count`, `k = 1..=count`.
    pub fn uniform(
        r_max: f64,
        count: usize,
        angles: usize,
        boundary_x: usize,
        min_modulus: f64,
    ) -> Result<Self> {
        if count == 0 {
            return Err(Error::domain("grid needs at least one radius"));
        }
        let radii = (1..=count)
            .map(|k| r_max * (k as f64 / count as f64))
            .collect();
        Self::new(radii, angles, boundary_x, min_modulus)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn r_max(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn boundary_x(&self) -> usize {
        self.boundary_x
    }

    pub fn min_modulus(&self) -> f64 {
        self.min_modulus
    }

    pub fn angle(&self, index: usize) -> f64 {
        2.0 * PI * index as f64 / self.angles as f64
    }

    /// `(radius index, angle index, z)` in lexicographic order.
    pub fn sample_points(&self) -> Vec<(usize, usize, Complex64)> {
        self.radii
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| {
                (0..self.angles).map(move |j| (i, j, Complex64::from_polar(r, self.angle(j))))
            })
            .collect()
    }

    /// Unit-circle directions `exp(2πi(k + 1/2)/M)`; the half-step offset
    /// keeps `x = 1` (the Janowski `B = −1` pole) off the sample set.
    pub fn boundary_points(&self) -> Vec<Complex64> {
        let m = self.boundary_x as f64;
        (0..self.boundary_x)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / m))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMember,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    ConvT1,
    ConvT2,
    Alexander,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::ConvT1 => "conv_t1",
            Method::ConvT2 => "conv_t2",
            Method::Alexander => "alexander",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub z: Complex64,
    pub x: Option<Complex64>,
}

/// Outcome of a membership check.
///
/// For [`Method::Direct`] and [`Method::Alexander`] the margin is the signed
/// distance of the phase ratio to the target boundary (positive inside).
/// For the convolution methods it is the minimum modulus of the convolved
/// value, negated when a zero was located inside the disc.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub margin: f64,
    pub witness: Witness,
    pub method: Method,
    pub skipped: usize,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.16e},{:.16e}", z.re, z.im)
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
        };
        writeln!(f, "verdict={verdict}")?;
        writeln!(f, "margin={:.16e}", self.margin)?;
        writeln!(f, "witness_z={}", fmt_complex(self.witness.z))?;
        if let Some(x) = self.witness.x {
            writeln!(f, "witness_x={}", fmt_complex(x))?;
        }
        writeln!(f, "method={}", self.method.name())?;
        writeln!(f, "skipped={}", self.skipped)
    }
}

/// Dispatches to the check implementing `method`.
pub fn check(
    f: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
    method: Method,
) -> Result<MembershipReport> {
    match method {
        Method::Direct => check_direct(f, spec, grid),
        Method::ConvT1 => check_convolution(f, spec, grid, ConvKernel::T1),
        Method::ConvT2 => check_convolution(f, spec, grid, ConvKernel::T2),
        Method::Alexander => check_alexander(f, spec, grid),
    }
}

/// `Φ(z) = −e^{−iλ}(cos λ · Θ(z) + i sin λ)` on the closed disc.
pub fn target_value(spec: &ClassSpec, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::domain(format!(
            "target_value needs |z| <= 1, got |z| = {}",
            z.norm()
        )));
    }
    let (sin, cos) = spec.lambda.sin_cos();
    let rot = Complex64::from_polar(1.0, -spec.lambda);
    Ok(-rot * (spec.theta.eval(z)? * cos + Complex64::new(0.0, sin)))
}

/// Containment verdict together with the signed distance to the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionTest {
    pub inside: bool,
    pub margin: f64,
}

impl RegionTest {
    fn from_margin(margin: f64) -> Self {
        // The target region is open: a point on the boundary is outside.
        Self {
            inside: margin > 0.0,
            margin,
        }
    }
}

/// `Φ(𝔹)` in a form that answers point queries cheaply.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TargetRegion {
    Disc {
        center: Complex64,
        radius: f64,
    },
    /// `{w : Re(rotation · w) < bound}`.
    HalfPlane {
        rotation: Complex64,
        bound: f64,
    },
    /// Closed polyline through sampled boundary values.
    Polygon(Vec<Complex64>),
}

impl TargetRegion {
    pub(crate) fn new(spec: &ClassSpec) -> Result<Self> {
        let (sin, cos) = spec.lambda.sin_cos();
        let rot = Complex64::from_polar(1.0, -spec.lambda);
        match spec.theta {
            ThetaSpec::Janowski { a, b } if b > -1.0 => {
                let denom = 1.0 - b * b;
                let c0 = (1.0 - a * b) / denom;
                Ok(TargetRegion::Disc {
                    center: -rot * (Complex64::new(cos * c0, sin)),
                    radius: cos * (a - b) / denom,
                })
            }
            ThetaSpec::Janowski { a, .. } => Ok(TargetRegion::HalfPlane {
                rotation: Complex64::from_polar(1.0, spec.lambda),
                bound: -(1.0 - a) * cos / 2.0,
            }),
            ThetaSpec::Polynomial(_) => {
                let vertices = (0..POLYGON_SAMPLES)
                    .map(|k| {
                        let x = Complex64::from_polar(
                            1.0,
                            2.0 * PI * k as f64 / POLYGON_SAMPLES as f64,
                        );
                        target_value(spec, x)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(TargetRegion::Polygon(vertices))
            }
        }
    }

    pub(crate) fn test(&self, w: Complex64) -> RegionTest {
        let margin = match self {
            TargetRegion::Disc { center, radius } => radius - (w - center).norm(),
            TargetRegion::HalfPlane { rotation, bound } => bound - (rotation * w).re,
            TargetRegion::Polygon(vertices) => polygon_margin(vertices, w),
        };
        RegionTest::from_margin(margin)
    }
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((p - a) * ab.conj()).re / len2
    };
    (p - (a + ab * t.clamp(0.0, 1.0))).norm()
}

/// Signed distance to a closed polyline: positive when the winding number
/// around `w` is nonzero.
fn polygon_margin(vertices: &[Complex64], w: Complex64) -> f64 {
    let mut winding = 0i64;
    let mut dist = f64::INFINITY;
    for (i, &a) in vertices.iter().enumerate() {
        let b = vertices[(i + 1) % vertices.len()];
        dist = dist.min(segment_distance(w, a, b));
        let cross = (b.re - a.re) * (w.im - a.im) - (w.re - a.re) * (b.im - a.im);
        if a.im <= w.im {
            if b.im > w.im && cross > 0.0 {
                winding += 1;
            }
        } else if b.im <= w.im && cross < 0.0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        dist
    } else {
        -dist
    }
}

/// Membership of `w` in the open region `Φ(𝔹)`.
pub fn target_region_contains(spec: &ClassSpec, w: Complex64) -> Result<RegionTest> {
    Ok(TargetRegion::new(spec)?.test(w))
}
