use num_complex::Complex64;
use rayon::prelude::*;

use super::{
    ClassKind, ClassSpec, GridSpec, MembershipReport, Method, TargetRegion, Verdict, Witness,
    DEFAULT_MIN_MODULUS,
};
use crate::laurent::SigmaSeries;
use crate::{Error, Result};

/// Fraction of singular grid points above which a direct scan gives up.
const MAX_SKIPPED_FRACTION: f64 = 0.01;

/// Numerator and denominator series of a phase ratio.
pub(crate) struct PhaseRatio {
    num: SigmaSeries,
    den: SigmaSeries,
}

impl PhaseRatio {
    /// Spirallike: `zF′/F`. Convex: `1 + zF″/F′ = zG′/G` with `G = zF′`.
    pub(crate) fn new(image: &SigmaSeries, kind: ClassKind) -> Self {
        let den = match kind {
            ClassKind::Spirallike => image.clone(),
            ClassKind::Convex => image.z_fprime(),
        };
        let num = den.z_fprime();
        Self { num, den }
    }

    pub(crate) fn eval(&self, z: Complex64, min_modulus: f64) -> Result<Complex64> {
        let den = self.den.evaluate(z)?;
        let modulus = den.norm();
        if modulus.is_nan() || modulus < min_modulus {
            return Err(Error::Singular { z, modulus });
        }
        Ok(self.num.evaluate(z)? / den)
    }
}

/// The phase ratio of `𝓑f` at `z` for the class kind of `spec`.
pub fn phase_ratio(f: &SigmaSeries, spec: &ClassSpec, z: Complex64) -> Result<Complex64> {
    let image = spec.image_of(f)?;
    PhaseRatio::new(&image, spec.kind).eval(z, DEFAULT_MIN_MODULUS)
}

fn require_normalized(f: &SigmaSeries) -> Result<()> {
    if f.principal != Complex64::new(1.0, 0.0) {
        return Err(Error::InvalidArgument(format!(
            "class membership needs principal part 1, got {}",
            f.principal
        )));
    }
    Ok(())
}

/// Samples the phase ratio of `𝓑f` over the grid and tests containment in
/// `Φ(𝔹)` at every sample.
pub fn check_direct(
    f: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
) -> Result<MembershipReport> {
    require_normalized(f)?;
    scan_image(&spec.image_of(f)?, spec, grid, Method::Direct)
}

/// [`check_direct`] for a function already given as `𝓑f`.
///
/// Useful when `f` itself is not representable, e.g. when `hₙ` underflows
/// at the truncation order needed for an accurate image.
pub fn check_direct_image(
    image: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
) -> Result<MembershipReport> {
    require_normalized(image)?;
    scan_image(image, spec, grid, Method::Direct)
}

/// Convex membership through the Alexander transform: `f` is convex exactly
/// when `−zf′` is spirallike.
pub fn check_alexander(
    f: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
) -> Result<MembershipReport> {
    if spec.kind != ClassKind::Convex {
        return Err(Error::InvalidArgument(
            "the alexander method checks the convex class".into(),
        ));
    }
    require_normalized(f)?;
    let starlike = spec.with_kind(ClassKind::Spirallike);
    let image = starlike.image_of(&f.alexander())?;
    scan_image(&image, &starlike, grid, Method::Alexander)
}

fn scan_image(
    image: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
    method: Method,
) -> Result<MembershipReport> {
    let region = TargetRegion::new(spec)?;
    let ratio = PhaseRatio::new(image, spec.kind);
    let points = grid.sample_points();
    let samples = points
        .par_iter()
        .map(|&(_, _, z)| match ratio.eval(z, grid.min_modulus()) {
            Ok(q) => Ok(Some((region.test(q).margin, z))),
            Err(Error::Singular { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;

    let skipped = samples.iter().filter(|s| s.is_none()).count();
    if skipped as f64 > MAX_SKIPPED_FRACTION * points.len() as f64 {
        return Err(Error::Inconclusive(format!(
            "{skipped} of {} grid points are singular",
            points.len()
        )));
    }
    // Samples are in lexicographic (radius, angle) order, so the first
    // strict minimum is the deterministic tie-break.
    let (margin, z) =
        samples
            .into_iter()
            .flatten()
            .fold((f64::INFINITY, Complex64::new(0.0, 0.0)), |best, s| {
                if s.0 < best.0 {
                    s
                } else {
                    best
                }
            });
    Ok(MembershipReport {
        verdict: if margin > 0.0 {
            Verdict::Member
        } else {
            Verdict::NonMember
        },
        margin,
        witness: Witness { z, x: None },
        method,
        skipped,
    })
}

/// One phase-ratio sample for plotting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub r: f64,
    pub theta: f64,
    pub q: Complex64,
    pub inside: bool,
}

/// Phase-ratio samples of `𝓑f` over the grid, singular points omitted.
pub fn boundary_curve(
    image: &SigmaSeries,
    spec: &ClassSpec,
    grid: &GridSpec,
) -> Result<Vec<CurveSample>> {
    let region = TargetRegion::new(spec)?;
    let ratio = PhaseRatio::new(image, spec.kind);
    let samples = grid
        .sample_points()
        .par_iter()
        .map(|&(i, j, z)| match ratio.eval(z, grid.min_modulus()) {
            Ok(q) => Ok(Some(CurveSample {
                r: grid.radii()[i],
                theta: grid.angle(j),
                q,
                inside: region.test(q).inside,
            })),
            Err(Error::Singular { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(samples.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ThetaSpec;
    use crate::special_fn::BmlParams;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(kind: ClassKind, a: f64, b: f64) -> ClassSpec {
        ClassSpec::new(
            0.0,
            ThetaSpec::janowski(a, b).unwrap(),
            kind,
            BmlParams::exponential(),
        )
        .unwrap()
    }

    #[test]
    fn phase_ratio_of_pure_pole_is_minus_one() {
        let s = spec(ClassKind::Spirallike, 1.0, -1.0);
        for z in [c(0.5, 0.0), c(-0.2, 0.7), c(0.01, -0.01)] {
            let q = phase_ratio(&SigmaSeries::pole(), &s, z).unwrap();
            assert!((q - c(-1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn phase_ratio_of_square_example() {
        // f = (1−z)²/z: q = −(1+z)/(1−z), convex ratio 1 + 2/(z²−1)
        let f = SigmaSeries::from_real_tail(&[-2.0, 1.0]);
        let q = phase_ratio(&f, &spec(ClassKind::Spirallike, 1.0, -1.0), c(0.5, 0.0)).unwrap();
        assert!((q - c(-3.0, 0.0)).norm() < 1e-14);
        let q = phase_ratio(&f, &spec(ClassKind::Convex, 1.0, -1.0), c(0.5, 0.0)).unwrap();
        assert!((q - c(-5.0 / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn phase_ratio_reports_singular_points() {
        // F = 1/z − 2 vanishes at z = 1/2.
        let f = SigmaSeries::from_real_tail(&[-2.0]);
        let err = phase_ratio(&f, &spec(ClassKind::Spirallike, 1.0, -1.0), c(0.5, 0.0));
        assert!(matches!(err, Err(Error::Singular { .. })));
    }

    #[test]
    fn pure_pole_is_member_everywhere() {
        let grid = GridSpec::uniform(0.99, 6, 32, 32, 1e-9).unwrap();
        for (a, b) in [(1.0, -1.0), (0.5, 0.0), (0.0, -0.5)] {
            let r = check_direct(
                &SigmaSeries::pole(),
                &spec(ClassKind::Spirallike, a, b),
                &grid,
            )
            .unwrap();
            assert_eq!(r.verdict, Verdict::Member);
            assert!(r.margin > 0.0);
        }
    }

    #[test]
    fn requires_principal_one() {
        let f = SigmaSeries::new(c(2.0, 0.0), vec![]);
        let grid = GridSpec::uniform(0.9, 4, 16, 16, 1e-9).unwrap();
        let err = check_direct(&f, &spec(ClassKind::Spirallike, 1.0, -1.0), &grid);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn many_singular_points_are_inconclusive() {
        // F = 1/z + 4z vanishes at z = ±i/2: two of sixteen samples.
        let grid = GridSpec::new(vec![0.5], 16, 16, 1e-9).unwrap();
        let f = SigmaSeries::from_real_tail(&[0.0, 4.0]);
        let err = check_direct(&f, &spec(ClassKind::Spirallike, 1.0, -1.0), &grid);
        assert!(matches!(err, Err(Error::Inconclusive(_))));
    }

    #[test]
    fn alexander_route_needs_convex_kind() {
        let grid = GridSpec::uniform(0.9, 4, 16, 16, 1e-9).unwrap();
        let err = check_alexander(
            &SigmaSeries::pole(),
            &spec(ClassKind::Spirallike, 1.0, -1.0),
            &grid,
        );
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }
}
