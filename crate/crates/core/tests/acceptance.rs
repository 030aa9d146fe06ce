//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};
use std::process::ExitCode;

use mlconv::bml_operator::{apply_operator, build_kernel, coefficient_h, invert_operator};
use mlconv::classes::{
    check_alexander, check_convolution, check_direct, check_direct_image, construct_nonmember,
    extremal_function, kernel_series, ClassKind, ClassSpec, ConvKernel, GridSpec, ThetaSpec,
    Verdict,
};
use mlconv::integral_repr::{bml_from_schwarz, closed_form_janowski, reconstruct_f, SchwarzSpec};
use mlconv::laurent::{hadamard, SigmaSeries};
use mlconv::special_fn::{barnes_ml, mittag_leffler_2p, BmlParams};
use mlconv::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_params(rng: &mut impl Rng) -> BmlParams {
    BmlParams::new(
        rng.random_range(0.5..2.0),
        rng.random_range(0.5..3.0),
        rng.random_range(0.5..3.0),
        rng.random_range(0.0..2.0),
    )
    .unwrap()
}

fn random_disc_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random_range(0.0f64..1.0).sqrt();
    Complex64::from_polar(r.max(1e-3), rng.random_range(0.0..2.0 * PI))
}

fn random_schwarz(rng: &mut impl Rng, min_degree: usize, bound: f64) -> SchwarzSpec {
    let degree = rng.random_range(1..=3).max(min_degree);
    let coefficients = (1..=degree)
        .map(|k| {
            if k < min_degree {
                c(0.0, 0.0)
            } else {
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            }
        })
        .collect();
    SchwarzSpec::scaled_to_bound(coefficients, bound).unwrap()
}

fn ulp(x: f64) -> f64 {
    x.abs().next_up() - x.abs()
}

fn ac1(rng: &mut ChaCha8Rng) -> Outcome {
    let grid: Vec<Complex64> = (1..=10)
        .flat_map(|i| {
            (0..10).map(move |j| Complex64::from_polar(0.2 * i as f64, 0.2 * PI * j as f64))
        })
        .collect();
    let mut exp_err: f64 = 0.0;
    for &z in &grid {
        let e1 = barnes_ml(&BmlParams::exponential(), z).unwrap();
        let ml = mittag_leffler_2p(1.0, 1.0, z).unwrap();
        exp_err = exp_err
            .max((e1 - z.exp()).norm())
            .max((ml - z.exp()).norm());
    }
    let mut red_err: f64 = 0.0;
    for _ in 0..20 {
        let p = random_params(rng);
        let p0 = BmlParams::new(p.k(), p.theta(), p.a(), 0.0).unwrap();
        for &z in &grid {
            let lhs = barnes_ml(&p0, z).unwrap();
            let rhs = mittag_leffler_2p(p.k(), p.theta(), z).unwrap();
            red_err = red_err.max((lhs - rhs).norm());
        }
    }
    (
        exp_err <= 1e-12 && red_err <= 1e-12,
        format!("reduction identities: max |E1 - exp| = {exp_err:.2e}, max |E^a(z;0) - E| = {red_err:.2e}"),
    )
}

fn ac2(rng: &mut ChaCha8Rng) -> Outcome {
    let mut h1_err: f64 = 0.0;
    for _ in 0..100 {
        h1_err = h1_err.max((coefficient_h(1, &random_params(rng)).unwrap() - 1.0).abs());
    }
    let mut fact_err: f64 = 0.0;
    let mut factorial = 1.0;
    for n in 1..=10usize {
        if n > 1 {
            factorial *= (n - 1) as f64;
        }
        let h = coefficient_h(n, &BmlParams::exponential()).unwrap();
        fact_err = fact_err.max((h - 1.0 / factorial).abs());
    }
    (
        h1_err <= 1e-14 && fact_err <= 1e-12,
        format!("kernel coefficients: max |h1 - 1| = {h1_err:.2e}, max |hn - 1/(n-1)!| = {fact_err:.2e}"),
    )
}

/// Series whose coefficients are small dyadic rationals, so every triple
/// product is exactly representable.
fn dyadic_series(rng: &mut impl Rng, order: usize) -> SigmaSeries {
    let mut d = || {
        c(
            rng.random_range(-64i32..=64) as f64 / 16.0,
            rng.random_range(-64i32..=64) as f64 / 16.0,
        )
    };
    SigmaSeries::new(d(), (0..order).map(|_| d()).collect())
}

fn float_series(rng: &mut impl Rng, order: usize) -> SigmaSeries {
    let mut d = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    SigmaSeries::new(c(1.0, 0.0), (0..order).map(|_| d()).collect())
}

fn ac3(rng: &mut ChaCha8Rng) -> Outcome {
    let mut failures = 0usize;
    for _ in 0..100 {
        let order = rng.random_range(1..=48);
        let (f, g, h) = (
            dyadic_series(rng, order),
            dyadic_series(rng, order),
            dyadic_series(rng, order),
        );
        let ok = hadamard(&f, &SigmaSeries::ones(order)) == f
            && hadamard(&f, &g) == hadamard(&g, &f)
            && hadamard(&hadamard(&f, &g), &h) == hadamard(&f, &hadamard(&g, &h));
        failures += usize::from(!ok);
    }
    // Identity and commutativity also hold exactly for arbitrary doubles.
    let mut generic_failures = 0usize;
    let mut roundtrip_failures = 0usize;
    for _ in 0..100 {
        let order = rng.random_range(1..=48);
        let (f, g) = (float_series(rng, order), float_series(rng, order));
        let ok =
            hadamard(&f, &SigmaSeries::ones(order)) == f && hadamard(&f, &g) == hadamard(&g, &f);
        generic_failures += usize::from(!ok);

        let kernel = build_kernel(&random_params(rng), order).unwrap();
        let back = apply_operator(&invert_operator(&f, &kernel), &kernel);
        let within_ulp = |a: f64, b: f64| (a - b).abs() <= ulp(b);
        let ok = back.principal == f.principal
            && back
                .tail
                .iter()
                .zip(&f.tail)
                .all(|(a, b)| within_ulp(a.re, b.re) && within_ulp(a.im, b.im));
        roundtrip_failures += usize::from(!ok);
    }
    (
        failures == 0 && generic_failures == 0 && roundtrip_failures == 0,
        format!(
            "convolution algebra: {failures} dyadic algebra failures, {generic_failures} generic identity/commutativity failures, {roundtrip_failures} apply-invert roundtrips beyond one ulp (100 triples each)"
        ),
    )
}

fn ac4() -> Outcome {
    const ORDER: usize = 2048;
    let grid = GridSpec::default();
    let mut min_margin = f64::INFINITY;
    let mut failed = Vec::new();
    for alpha in [0.0, 0.25, 0.5] {
        for lambda in [0.0, FRAC_PI_4, -FRAC_PI_4, FRAC_PI_3, -FRAC_PI_3] {
            let spec = ClassSpec::new(
                lambda,
                ThetaSpec::janowski(1.0 - 2.0 * alpha, -1.0).unwrap(),
                ClassKind::Spirallike,
                BmlParams::exponential(),
            )
            .unwrap();
            let image = extremal_function(alpha, lambda, ORDER).unwrap();
            match check_direct_image(&image, &spec, &grid) {
                Ok(r) if r.is_member() && r.margin > 0.0 => min_margin = min_margin.min(r.margin),
                other => failed.push(format!("({alpha}, {lambda:.4}): {other:?}")),
            }
        }
    }
    (
        failed.is_empty(),
        format!(
            "extremal membership: 15 cases at r_max 0.99, N = {ORDER}, min margin {min_margin:.3e}{}",
            if failed.is_empty() { String::new() } else { format!(", failed {failed:?}") }
        ),
    )
}

struct Tuple {
    spec: ClassSpec,
    alpha: f64,
}

struct BatteryEntry {
    label: &'static str,
    f: SigmaSeries,
    spec: ClassSpec,
}

const BATTERY_ORDER: usize = 64;

fn battery_tuples() -> Vec<Tuple> {
    let rows = [
        ((1.0, 1.0, 1.0, 0.0), 0.0, (1.0, -1.0), 0.25),
        ((0.5, 2.0, 1.5, 1.0), 0.4, (0.5, -0.5), 0.5),
        ((2.0, 0.5, 0.5, 2.0), -0.6, (0.8, 0.0), 0.0),
        ((1.5, 3.0, 2.5, 0.5), 1.0, (0.3, -1.0), 0.25),
        ((0.8, 1.2, 3.0, 1.5), -0.3, (1.0, 0.2), 0.5),
    ];
    rows.iter()
        .map(|&((k, theta, a, s), lambda, (big_a, big_b), alpha)| Tuple {
            spec: ClassSpec::new(
                lambda,
                ThetaSpec::janowski(big_a, big_b).unwrap(),
                ClassKind::Spirallike,
                BmlParams::new(k, theta, a, s).unwrap(),
            )
            .unwrap(),
            alpha,
        })
        .collect()
}

fn battery_grid() -> GridSpec {
    GridSpec::uniform(0.9, 12, 128, 512, 1e-9).unwrap()
}

fn build_battery(rng: &mut ChaCha8Rng) -> Vec<BatteryEntry> {
    let grid = battery_grid();
    let mut battery = Vec::new();
    for t in battery_tuples() {
        let kernel = build_kernel(&t.spec.params, BATTERY_ORDER).unwrap();
        let mut members = Vec::new();
        for _ in 0..3 {
            let omega = random_schwarz(rng, 1, 0.8);
            members.push(BatteryEntry {
                label: "reconstructed",
                f: reconstruct_f(&t.spec, &omega, &kernel, BATTERY_ORDER).unwrap(),
                spec: t.spec.clone(),
            });
        }
        let half_plane = ClassSpec::new(
            t.spec.lambda,
            ThetaSpec::janowski(1.0 - 2.0 * t.alpha, -1.0).unwrap(),
            ClassKind::Spirallike,
            t.spec.params,
        )
        .unwrap();
        let extremal = extremal_function(t.alpha, t.spec.lambda, BATTERY_ORDER).unwrap();
        members.push(BatteryEntry {
            label: "extremal",
            f: invert_operator(&extremal, &kernel),
            spec: half_plane,
        });
        for m in &members {
            if let Ok(g) = construct_nonmember(&m.f, &m.spec, &grid) {
                battery.push(BatteryEntry {
                    label: "constructed",
                    f: g,
                    spec: m.spec.clone(),
                });
            }
        }
        battery.extend(members);
    }
    battery
}

fn ac5(battery: &[BatteryEntry], rng: &mut ChaCha8Rng) -> Outcome {
    let grid = battery_grid();
    let mut disagreements = Vec::new();
    let (mut members, mut nonmembers) = (0, 0);
    for (i, e) in battery.iter().enumerate() {
        let verdicts: Vec<_> = [
            check_direct(&e.f, &e.spec, &grid),
            check_convolution(&e.f, &e.spec, &grid, ConvKernel::T1),
            check_convolution(&e.f, &e.spec, &grid, ConvKernel::T2),
        ]
        .into_iter()
        .map(|r| r.map(|r| r.verdict))
        .collect();
        match &verdicts[..] {
            [Ok(a), Ok(b), Ok(c)] if a == b && b == c => {
                if *a == Verdict::Member {
                    members += 1;
                } else {
                    nonmembers += 1;
                }
            }
            _ => disagreements.push(format!("#{i} {}: {verdicts:?}", e.label)),
        }
    }

    // Kernel identities on every battery function at random x and z.
    let mut t1_err: f64 = 0.0;
    let mut t2_ratio: f64 = 0.0;
    for e in battery {
        let image = e.spec.image_of(&e.f).unwrap();
        let order = e.f.order();
        for _ in 0..4 {
            let x = Complex64::from_polar(1.0, rng.random_range(0.1..2.0 * PI - 0.1));
            let big_e = e.spec.boundary_value(x).unwrap();
            let t1 = kernel_series(x, &e.spec, order, ConvKernel::T1).unwrap();
            let conv = hadamard(&image, &t1);
            for _ in 0..8 {
                let z = random_disc_point(rng, 0.95);
                let lhs = (big_e - 1.0) * conv.evaluate(z).unwrap();
                let fz = image.evaluate(z).unwrap();
                let dfz = image.z_fprime().evaluate(z).unwrap();
                let scale = dfz.norm() + big_e.norm() * fz.norm();
                t1_err = t1_err.max((lhs - (dfz + big_e * fz)).norm() / scale.max(1.0));
            }
            let t2 = kernel_series(x, &e.spec, order, ConvKernel::T2).unwrap();
            let via_f = hadamard(&e.f, &t2);
            let direct = &image.z_fprime() + &image.scale(big_e);
            let pairs = std::iter::once((
                via_f.principal,
                direct.principal,
                e.f.principal.norm() * (1.0 + big_e.norm()),
            ))
            .chain((0..order).map(|i| {
                (
                    via_f.tail[i],
                    direct.tail[i],
                    image.tail[i].norm() * (i as f64 + big_e.norm()),
                )
            }));
            for (a, b, bound) in pairs {
                if bound > 0.0 {
                    t2_ratio = t2_ratio.max((a - b).norm() / (bound * f64::EPSILON));
                }
            }
        }
    }
    // Two complex roundings: each within sqrt(5)·u, u = ε/2, of the exact product.
    let t2_limit = 2.0 * 5f64.sqrt() * 0.5 + 2.0;
    let ok =
        battery.len() >= 30 && disagreements.is_empty() && t1_err <= 1e-10 && t2_ratio <= t2_limit;
    (
        ok,
        format!(
            "direct/t1/t2 agreement: {} functions over 5 tuples ({members} member, {nonmembers} non-member), t1 identity rel err {t1_err:.2e}, t2 identity {t2_ratio:.2} eps (limit {t2_limit:.2}){}",
            battery.len(),
            if disagreements.is_empty() { String::new() } else { format!(", disagreements {disagreements:?}") }
        ),
    )
}

fn ac6(rng: &mut ChaCha8Rng) -> Outcome {
    let mut max_err: f64 = 0.0;
    for i in 0..15 {
        let lambda = rng.random_range(-1.4..1.4);
        let b = if i < 10 {
            let b: f64 = rng.random_range(-1.0..0.95);
            if b.abs() < 1e-3 {
                -0.5
            } else {
                b
            }
        } else {
            0.0
        };
        let a = rng.random_range(b..1.0) + 1e-9;
        let spec = ClassSpec::new(
            lambda,
            ThetaSpec::janowski(a.min(1.0), b).unwrap(),
            ClassKind::Spirallike,
            BmlParams::exponential(),
        )
        .unwrap();
        for _ in 0..200 {
            let z = random_disc_point(rng, 0.9);
            let quad = bml_from_schwarz(&spec, &SchwarzSpec::identity(), z, 64).unwrap();
            let exact = closed_form_janowski(&spec, z).unwrap();
            max_err = max_err.max((quad - exact).norm());
        }
    }
    (
        max_err <= 1e-10,
        format!("quadrature vs closed form: 15 specs x 200 points, max err {max_err:.2e}"),
    )
}

const RECON_ORDER: usize = 160;

fn ac7(rng: &mut ChaCha8Rng) -> Outcome {
    let mut max_err: f64 = 0.0;
    for _ in 0..5 {
        let params = BmlParams::new(
            rng.random_range(0.5..1.0),
            rng.random_range(0.5..3.0),
            rng.random_range(0.5..3.0),
            rng.random_range(0.0..2.0),
        )
        .unwrap();
        let kernel = build_kernel(&params, RECON_ORDER).unwrap();
        for _ in 0..10 {
            let b: f64 = rng.random_range(-1.0..0.9);
            let spec = ClassSpec::new(
                rng.random_range(-1.2..1.2),
                ThetaSpec::janowski(rng.random_range(b..1.0f64).max(b + 1e-3).min(1.0), b).unwrap(),
                ClassKind::Spirallike,
                params,
            )
            .unwrap();
            let omega = random_schwarz(rng, 1, 0.8);
            let f = reconstruct_f(&spec, &omega, &kernel, RECON_ORDER).unwrap();
            let image = apply_operator(&f, &kernel);
            for _ in 0..20 {
                let z = random_disc_point(rng, 0.9);
                let quad = bml_from_schwarz(&spec, &omega, z, 128).unwrap();
                max_err = max_err.max((image.evaluate(z).unwrap() - quad).norm());
            }
        }
    }
    (
        max_err <= 1e-8,
        format!(
            "reconstruction roundtrip: 5 tuples x 10 Schwarz functions x 20 points in |z| <= 0.9, N = {RECON_ORDER}, max err {max_err:.2e}"
        ),
    )
}

fn ac8(battery: &[BatteryEntry], rng: &mut ChaCha8Rng) -> Outcome {
    let grid = battery_grid();
    let mut disagreements = Vec::new();
    let mut checked = 0;
    let mut members = 0;
    let mut candidates: Vec<(SigmaSeries, ClassSpec)> = battery
        .iter()
        .map(|e| {
            let mut f = e.f.clone();
            f.tail[0] = c(0.0, 0.0);
            (f, e.spec.with_kind(ClassKind::Convex))
        })
        .collect();
    for t in battery_tuples() {
        let spec = t.spec.with_kind(ClassKind::Convex);
        let kernel = build_kernel(&spec.params, BATTERY_ORDER).unwrap();
        for _ in 0..2 {
            let omega = random_schwarz(rng, 2, 0.8);
            candidates.push((
                reconstruct_f(&spec, &omega, &kernel, BATTERY_ORDER).unwrap(),
                spec.clone(),
            ));
        }
    }
    for (i, (f, spec)) in candidates.iter().enumerate() {
        let direct = check_direct(f, spec, &grid).map(|r| r.verdict);
        let alexander = check_alexander(f, spec, &grid).map(|r| r.verdict);
        match (&direct, &alexander) {
            (Ok(a), Ok(b)) if a == b => {
                checked += 1;
                members += usize::from(*a == Verdict::Member);
            }
            _ => disagreements.push(format!("#{i}: {direct:?} vs {alexander:?}")),
        }
    }

    let square = SchwarzSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let mut cross_err: f64 = 0.0;
    let mut gate_failures = Vec::new();
    for t in battery_tuples() {
        let convex = t.spec.with_kind(ClassKind::Convex);
        let kernel = build_kernel(&convex.params, BATTERY_ORDER).unwrap();
        match reconstruct_f(&convex, &square, &kernel, BATTERY_ORDER) {
            Ok(f) => {
                let image = apply_operator(&f.alexander(), &kernel);
                for _ in 0..20 {
                    let z = random_disc_point(rng, 0.5);
                    let quad = bml_from_schwarz(&t.spec, &square, z, 64).unwrap();
                    cross_err = cross_err.max((image.evaluate(z).unwrap() - quad).norm());
                }
            }
            Err(e) => gate_failures.push(e.to_string()),
        }
    }
    (
        disagreements.is_empty() && gate_failures.is_empty() && cross_err <= 1e-8,
        format!(
            "convex direct vs alexander: {checked} agree ({members} member), omega = z^2 cross-check max err {cross_err:.2e} in |z| <= 0.5{}{}",
            if disagreements.is_empty() { String::new() } else { format!(", disagreements {disagreements:?}") },
            if gate_failures.is_empty() { String::new() } else { format!(", gate failures {gate_failures:?}") }
        ),
    )
}

fn main() -> ExitCode {
    let seed = std::env::var("AC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results: Vec<(&str, Outcome)> = vec![
        ("AC-1", ac1(&mut rng)),
        ("AC-2", ac2(&mut rng)),
        ("AC-3", ac3(&mut rng)),
        ("AC-4", ac4()),
    ];
    let battery = build_battery(&mut rng);
    results.push(("AC-5", ac5(&battery, &mut rng)));
    results.push(("AC-6", ac6(&mut rng)));
    results.push(("AC-7", ac7(&mut rng)));
    results.push(("AC-8", ac8(&battery, &mut rng)));

    let mut all = true;
    for (name, (ok, detail)) in &results {
        println!("{name} {} {detail}", if *ok { "PASS" } else { "FAIL" });
        all &= ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
