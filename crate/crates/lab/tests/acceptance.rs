//! Acceptance suite: one test per criterion, each printing a
//! `criterion N: PASS|FAIL` line with the failed sub-checks in the panic
//! message. Run `cargo test -p zalcman-lab --test acceptance -- --nocapture`
//! to see the lines on success too.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zalcman_core::classify::{classify, dual, membership, FamilyInstance};
use zalcman_core::construct::{
    ray_pinned_direction, recipe_exp_interior, recipe_exp_ray_pinned, recipe_monome, Z0Mode,
};
use zalcman_core::kernel::{chordal, circular_distance, normalize_angle, LogComplex};
use zalcman_core::locus::nonnormal_rays;
use zalcman_core::model::{PolynomialSpec, RationalSpec};
use zalcman_core::verify::{
    check_exponent_relations, marty_scan, verify_convergence, GridSpec, VerifyMode,
};
use zalcman_core::FuncSpec;

fn finish(criterion: u32, checks: Vec<(String, bool)>) {
    let ok = checks.iter().all(|(_, pass)| *pass);
    println!("criterion {criterion}: {}", if ok { "PASS" } else { "FAIL" });
    if !ok {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|(_, pass)| !*pass)
            .map(|(name, _)| name.as_str())
            .collect();
        panic!("criterion {criterion} failed: {}", failed.join("; "));
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn monic_zk(k: u32) -> PolynomialSpec {
    PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(0.0, 0.0), k)]).unwrap()
}

fn exp_zk(k: u32) -> FuncSpec {
    FuncSpec::exp_rational(RationalSpec::one(), monic_zk(k)).unwrap()
}

/// e^z, e^{z²}, z·e^{z³}, (z/(z−2))·e^{z²}
fn exp_battery() -> Vec<FuncSpec> {
    let z_factor = RationalSpec::new(c(1.0, 0.0), &[(c(0.0, 0.0), 1)], &[]).unwrap();
    let moebius_factor =
        RationalSpec::new(c(1.0, 0.0), &[(c(0.0, 0.0), 1)], &[(c(2.0, 0.0), 1)]).unwrap();
    vec![
        exp_zk(1),
        exp_zk(2),
        FuncSpec::exp_rational(z_factor, monic_zk(3)).unwrap(),
        FuncSpec::exp_rational(moebius_factor, monic_zk(2)).unwrap(),
    ]
}

#[test]
fn criterion_1_monome_exact_identities() {
    let start = Instant::now();
    let grid = GridSpec::default();
    let schedule = [10u64, 1_000, 1_000_000];
    let mut checks = Vec::new();
    for k in 1..=3u32 {
        let f = FuncSpec::Polynomial(
            PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(3.0, 0.0), k)]).unwrap(),
        );
        let g = FamilyInstance::power(c(1.0, 0.0), 2.0, c(1.0, 1.0), k as i32).unwrap();
        for alpha in [-0.5, 0.0, 0.5] {
            let recipe = recipe_monome(k, c(3.0, 0.0), alpha, 2.0, c(1.0, 1.0)).unwrap();
            let report = verify_convergence(
                &f,
                alpha,
                &recipe,
                &g,
                &grid,
                &schedule,
                1e-9,
                VerifyMode::Full,
            )
            .unwrap();
            checks.push((
                format!("k={k} alpha={alpha}: sup below 1e-9 at every n"),
                report.verdict && report.sup_error.iter().all(|&e| e < 1e-9),
            ));
        }
    }
    checks.push((
        "runtime under 1 s".into(),
        start.elapsed().as_secs_f64() < 1.0,
    ));
    finish(1, checks);
}

#[test]
fn criterion_2_ray_formula() {
    let mut checks = Vec::new();
    let rays = nonnormal_rays(&exp_zk(2));
    let want = [FRAC_PI_4, 3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4, 7.0 * FRAC_PI_4];
    checks.push(("quadratic exponent has 4 rays".into(), rays.len() == 4));
    for (&got, &want) in rays.angles().iter().zip(&want) {
        checks.push((
            format!("ray at {want} to 1e-12"),
            (got - want).abs() < 1e-12,
        ));
    }
    for k in 1..=6u32 {
        let rays = nonnormal_rays(&exp_zk(k));
        let angles = rays.angles();
        let step = TAU / k as f64;
        let invariant = angles.iter().all(|&a| {
            let rotated = normalize_angle(a + step);
            angles.iter().any(|&b| circular_distance(rotated, b) < 1e-12)
        });
        checks.push((
            format!("degree {k}: {} rays, 2π/{k}-rotation invariant", 2 * k),
            angles.len() == 2 * k as usize && invariant,
        ));
    }
    finish(2, checks);
}

#[test]
fn criterion_3_marty_locus() {
    let start = Instant::now();
    let f = exp_zk(2);
    let on_ray = marty_scan(
        &f,
        Complex64::from_polar(0.5, FRAC_PI_4),
        0.1,
        11,
        &[5, 50],
    )
    .unwrap();
    let off_ray = marty_scan(&f, c(0.5, 0.0), 0.1, 11, &[50]).unwrap();
    let checks = vec![
        (
            "on-ray field grows at least 10x from n=5 to n=50".into(),
            on_ray.maxima[1] >= 10.0 * on_ray.maxima[0],
        ),
        (
            "off-ray field below 1e-2 at n=50".into(),
            off_ray.maxima[0] < 1e-2,
        ),
        (
            "runtime under 10 s".into(),
            start.elapsed().as_secs_f64() < 10.0,
        ),
    ];
    finish(3, checks);
}

#[test]
fn criterion_4_classification_is_alpha_independent() {
    let mut checks = Vec::new();
    for (i, f) in exp_battery().iter().enumerate() {
        let pos = classify(f, 0.25).unwrap().set_eq(&classify(f, 0.75).unwrap(), 1e-9);
        let neg = classify(f, -0.25)
            .unwrap()
            .set_eq(&classify(f, -0.75).unwrap(), 1e-9);
        checks.push((format!("function {i}: same set at alpha=0.25 and 0.75"), pos));
        checks.push((format!("function {i}: same set at alpha=-0.25 and -0.75"), neg));
    }
    finish(4, checks);
}

#[test]
fn criterion_5_reciprocal_duality() {
    let mut battery = exp_battery();
    battery.push(FuncSpec::Rational(
        RationalSpec::new(c(1.0, 0.0), &[(c(0.0, 0.0), 1)], &[(c(2.0, 0.0), 1)]).unwrap(),
    ));
    battery.push(FuncSpec::Rational(
        RationalSpec::new(c(1.0, 0.0), &[], &[(c(0.0, 0.0), 2)]).unwrap(),
    ));
    let mut checks = Vec::new();
    for (i, f) in battery.iter().enumerate() {
        for alpha in [0.5, -0.5] {
            let forward = classify(f, alpha).unwrap();
            let mirrored = classify(&f.reciprocal(), -alpha).unwrap();
            checks.push((
                format!("function {i} alpha={alpha}: classify(1/f,-a) = dual"),
                mirrored.set_eq(&dual(&forward), 1e-9),
            ));
        }
    }
    finish(5, checks);
}

#[test]
fn criterion_6_interior_construction() {
    let start = Instant::now();
    let FuncSpec::ExpRational(e) = exp_zk(2) else {
        unreachable!()
    };
    let recipe = recipe_exp_interior(&e, 0.5, FRAC_PI_2).unwrap();
    let schedule = [10u64, 100, 1_000, 10_000, 100_000, 1_000_000];
    let state = recipe.interior_state(&schedule).unwrap();
    let mut checks = Vec::new();
    checks.push((
        "pinning residual below 1e-10 at every n".into(),
        state.rows.iter().all(|r| r.residual.abs() < 1e-10),
    ));
    let t_last = state.rows.last().unwrap().t_n;
    checks.push((
        "t_n within 5% of sqrt(0.5) at n=1e6".into(),
        (t_last / 0.5f64.sqrt() - 1.0).abs() < 0.05,
    ));
    let last = state.rows.last().unwrap();
    let n = last.n as f64;
    let factor = (n * last.rho_n) * (n * last.zhat_n).norm();
    checks.push((
        "normalization factor within 5% of 1 at n=1e6".into(),
        (factor - 1.0).abs() < 0.05,
    ));
    let table = check_exponent_relations(&exp_zk(2), 0.5, &recipe, &schedule).unwrap();
    for row in &table.rows {
        let decreasing = row.residuals.windows(2).all(|w| w[1] < w[0]);
        checks.push((
            format!("relation row j={} decreasing along the schedule", row.j),
            decreasing,
        ));
    }
    checks.push((
        "runtime under 5 s".into(),
        start.elapsed().as_secs_f64() < 5.0,
    ));
    finish(6, checks);
}

#[test]
fn criterion_7_pinned_ray_convergence() {
    let mut checks = Vec::new();

    let FuncSpec::ExpRational(linear) = exp_zk(1) else {
        unreachable!()
    };
    let (_, arg_a1) = ray_pinned_direction(&linear, 0).unwrap();
    let recipe = recipe_exp_ray_pinned(
        &linear,
        0.0,
        Z0Mode::Shrinking,
        0,
        Complex64::from_polar(1.0, arg_a1),
        c(0.0, 0.0),
    )
    .unwrap();
    let report = verify_convergence(
        &exp_zk(1),
        0.0,
        &recipe,
        &FamilyInstance::exp(c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
        &GridSpec::default(),
        &[10, 100, 1_000, 10_000, 100_000, 1_000_000],
        1e-12,
        VerifyMode::Full,
    )
    .unwrap();
    checks.push((
        "exact pinned e^z: sup below 1e-12 at every n".into(),
        report.verdict && report.sup_error.iter().all(|&e| e < 1e-12),
    ));

    let FuncSpec::ExpRational(quad) = exp_zk(2) else {
        unreachable!()
    };
    let (_, arg_a1) = ray_pinned_direction(&quad, 0).unwrap();
    let recipe = recipe_exp_ray_pinned(
        &quad,
        0.0,
        Z0Mode::Shrinking,
        0,
        Complex64::from_polar(1.0, arg_a1),
        c(0.0, 0.0),
    )
    .unwrap();
    let report = verify_convergence(
        &exp_zk(2),
        0.0,
        &recipe,
        recipe.target(),
        &GridSpec::new(1.0, 21, 0.05).unwrap(),
        &[100, 10_000, 1_000_000],
        1e-2,
        VerifyMode::Full,
    )
    .unwrap();
    checks.push((
        "pinned Newton e^{z^2}: sup decreasing on the unit disk".into(),
        report.sup_error.windows(2).all(|w| w[1] < w[0]),
    ));
    checks.push((
        "pinned Newton e^{z^2}: sup below 1e-2 by n=1e6".into(),
        *report.sup_error.last().unwrap() < 1e-2,
    ));
    finish(7, checks);
}

#[test]
fn criterion_8_negative_controls() {
    let mut checks = Vec::new();

    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("exp_linear.json");
    std::fs::write(
        &config_path,
        r#"{
  "kind": "exp_rational",
  "alpha": 0.0,
  "polynomial": { "leading": [1.0, 0.0], "roots": [{ "point": [0.0, 0.0], "mult": 1 }] }
}"#,
    )
    .unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_zalcman-lab"))
        .arg("verify")
        .arg(&config_path)
        .args(["--target", "exp,perturb_arg=0.1", "--n-schedule", "10,100,1000"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(output.stdout).unwrap();
    checks.push((
        "perturbed verify exits with code 1".into(),
        output.status.code() == Some(1),
    ));
    checks.push((
        "perturbed verify reports a non-decreasing error".into(),
        stdout.contains("# reason: non-decreasing error"),
    ));

    let set = classify(&exp_zk(1), 0.0).unwrap();
    let rotated = FamilyInstance::exp(c(0.0, 1.0), c(0.0, 0.0)).unwrap();
    checks.push((
        "e^{i zeta} is not a limit of rescaled e^z at alpha=0".into(),
        !membership(&rotated, &set, 1e-9),
    ));
    finish(8, checks);
}

#[test]
fn criterion_9_kernel_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut checks = Vec::new();

    let sample = |rng: &mut ChaCha8Rng| -> LogComplex {
        match rng.random_range(0..10u32) {
            0 => LogComplex::zero(),
            1 => LogComplex::infinity(),
            _ => LogComplex::finite(rng.random_range(-40.0..40.0), rng.random_range(0.0..TAU)),
        }
    };
    let mut triangle_ok = true;
    for _ in 0..10_000 {
        let (a, b, x) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        if chordal(&a, &x) > chordal(&a, &b) + chordal(&b, &x) + 1e-12 {
            triangle_ok = false;
            break;
        }
    }
    checks.push(("triangle inequality on 1e4 random triples".into(), triangle_ok));

    let mut arith_ok = true;
    for _ in 0..10_000 {
        let wa = Complex64::from_polar(
            rng.random_range(-15.0f64..15.0).exp(),
            rng.random_range(0.0..TAU),
        );
        let wb = Complex64::from_polar(
            rng.random_range(-15.0f64..15.0).exp(),
            rng.random_range(0.0..TAU),
        );
        let a = LogComplex::from_cartesian(wa);
        let b = LogComplex::from_cartesian(wb);
        let product = a.mul(&b).unwrap().to_cartesian();
        let sum = a.add(&b).to_cartesian();
        if (product - wa * wb).norm() > 1e-12 * (wa * wb).norm()
            || (sum - (wa + wb)).norm() > 1e-12 * (wa.norm() + wb.norm())
        {
            arith_ok = false;
            break;
        }
    }
    checks.push((
        "log arithmetic matches cartesian on 1e4 pairs".into(),
        arith_ok,
    ));

    let battery = [
        FuncSpec::Polynomial(
            PolynomialSpec::from_roots(
                c(2.0, 0.0),
                &[(c(0.0, 0.0), 2), (c(1.0, -1.0), 1)],
            )
            .unwrap(),
        ),
        FuncSpec::Rational(
            RationalSpec::new(
                c(0.0, 3.0),
                &[(c(0.0, 0.0), 1), (c(-1.0, 0.5), 2)],
                &[(c(2.0, 0.0), 1)],
            )
            .unwrap(),
        ),
        FuncSpec::exp_rational(
            RationalSpec::new(c(1.0, 1.0), &[(c(0.5, 0.0), 1)], &[(c(0.0, -2.0), 1)]).unwrap(),
            PolynomialSpec::from_coefficients(&[c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                .unwrap(),
        )
        .unwrap(),
    ];
    let h = 1e-6;
    let mut fd_ok = true;
    let mut fd_points = 0;
    'outer: for f in &battery {
        let (_, zeros, poles) = f.rational_view();
        let special: Vec<Complex64> = zeros
            .iter()
            .chain(poles.iter())
            .map(|&(p, _)| p)
            .collect();
        let mut taken = 0;
        while taken < 34 {
            let z = c(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            );
            if special.iter().any(|&s| (z - s).norm() < 0.2) {
                continue;
            }
            taken += 1;
            fd_points += 1;
            let exact = f.spherical_derivative(z);
            let quotient = chordal(&f.eval_log(z + c(h, 0.0)), &f.eval_log(z)) / h;
            let scale = exact.abs().max(1.0);
            if ((exact - quotient) / scale).abs() >= 1e-4 {
                fd_ok = false;
                break 'outer;
            }
        }
    }
    checks.push((
        format!("finite differences confirm the spherical derivative at {fd_points} points"),
        fd_ok && fd_points >= 100,
    ));
    finish(9, checks);
}
