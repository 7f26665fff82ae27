//! Property suites for the log-domain kernel and derivative oracles.
//!
//! The metric axioms run over large seeded samples that mix all three
//! strata (finite, zero, infinity); the closed-form derivatives are
//! checked against branch-corrected finite differences of the log-domain
//! evaluator.

use core::f64::consts::{PI, TAU};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zalcman_core::kernel::{chordal, circular_distance, normalize_angle, LogComplex};
use zalcman_core::model::{ExpRationalSpec, FuncSpec, PolynomialSpec, RationalSpec};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A random point on the extended plane: mostly finite over a wide
/// log-modulus range, with both ideal points mixed in.
fn sample(rng: &mut ChaCha8Rng) -> LogComplex {
    match rng.random_range(0..10u32) {
        0 => LogComplex::zero(),
        1 => LogComplex::infinity(),
        _ => LogComplex::finite(
            rng.random_range(-40.0..40.0),
            rng.random_range(0.0..TAU),
        ),
    }
}

fn sample_moderate(rng: &mut ChaCha8Rng) -> LogComplex {
    LogComplex::finite(
        rng.random_range(-15.0..15.0),
        rng.random_range(0.0..TAU),
    )
}

#[test]
fn triangle_inequality_over_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7261_6e64_0001);
    for i in 0..10_000 {
        let (a, b, m) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let direct = chordal(&a, &b);
        let detour = chordal(&a, &m) + chordal(&m, &b);
        assert!(
            direct <= detour + 1e-12,
            "triangle violated at sample {i}: {direct} > {detour}"
        );
    }
}

#[test]
fn mul_and_add_match_cartesian_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7261_6e64_0002);
    for i in 0..10_000 {
        let (a, b) = (sample_moderate(&mut rng), sample_moderate(&mut rng));
        let (wa, wb) = (a.to_cartesian(), b.to_cartesian());

        let prod = a.mul(&b).expect("finite product").to_cartesian();
        let want = wa * wb;
        assert!(
            (prod - want).norm() <= 1e-12 * want.norm(),
            "mul mismatch at sample {i}: {prod} vs {want}"
        );

        let sum = a.add(&b).to_cartesian();
        let want = wa + wb;
        // Additive cancellation is intrinsic; bound the error by the
        // operand magnitude, not the (possibly tiny) result.
        assert!(
            (sum - want).norm() <= 1e-12 * (wa.norm() + wb.norm()),
            "add mismatch at sample {i}: {sum} vs {want}"
        );
    }
}

#[test]
fn inversion_invariance_within_tolerance() {
    // Reciprocation renormalizes the angle, so invariance holds to
    // rounding, not bit-for-bit.
    let mut rng = ChaCha8Rng::seed_from_u64(0x7261_6e64_0003);
    for i in 0..10_000 {
        let (a, b) = (sample(&mut rng), sample(&mut rng));
        let plain = chordal(&a, &b);
        let inverted = chordal(&a.recip(), &b.recip());
        assert!(
            (plain - inverted).abs() < 1e-12,
            "inversion moved the distance at sample {i}: {plain} vs {inverted}"
        );
    }
}

prop_compose! {
    fn log_point()(sel in 0..10u32, t in -40.0..40.0f64, theta in 0.0..TAU) -> LogComplex {
        match sel {
            0 => LogComplex::zero(),
            1 => LogComplex::infinity(),
            _ => LogComplex::finite(t, theta),
        }
    }
}

proptest! {
    #[test]
    fn chordal_range_and_identity(a in log_point(), b in log_point()) {
        let d = chordal(&a, &b);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(chordal(&a, &a), 0.0);
    }

    #[test]
    fn chordal_symmetry_is_bit_exact(a in log_point(), b in log_point()) {
        prop_assert_eq!(chordal(&a, &b), chordal(&b, &a));
    }

    #[test]
    fn normalize_angle_lands_in_base_turn(theta in -1e9..1e9f64) {
        let r = normalize_angle(theta);
        prop_assert!((0.0..TAU).contains(&r));
    }

    #[test]
    fn multiplication_is_bit_commutative(a in log_point(), b in log_point()) {
        match (a.mul(&b), b.mul(&a)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "asymmetric error: {:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn reciprocal_is_involutive_up_to_angle_rounding(a in log_point()) {
        let back = a.recip().recip();
        prop_assert_eq!(back.kind(), a.kind());
        if a.is_finite() {
            prop_assert_eq!(back.t(), a.t());
            prop_assert!(circular_distance(back.theta(), a.theta()) < 1e-12);
        }
    }
}

/// Battery of functions exercising every model shape.
fn battery() -> Vec<FuncSpec> {
    let poly = PolynomialSpec::from_roots(
        c(2.0, 0.0),
        &[(c(0.0, 0.0), 2), (c(1.0, -1.0), 1)],
    )
    .unwrap();
    let rational = RationalSpec::new(
        c(0.0, 3.0),
        &[(c(0.0, 0.0), 1), (c(-1.0, 0.5), 2)],
        &[(c(2.0, 0.0), 1)],
    )
    .unwrap();
    let exp_rational = ExpRationalSpec::new(
        RationalSpec::new(c(1.0, 1.0), &[(c(0.5, 0.0), 1)], &[(c(0.0, -2.0), 1)]).unwrap(),
        PolynomialSpec::from_coefficients(&[c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap(),
    );
    vec![
        FuncSpec::Polynomial(poly),
        FuncSpec::Rational(rational),
        FuncSpec::ExpRational(exp_rational),
    ]
}

/// 100 sample points per function, kept clear of zeros and poles.
fn safe_points(f: &FuncSpec, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let (_, zeros, poles) = f.rational_view();
    let special: Vec<Complex64> = zeros
        .iter()
        .chain(poles.iter())
        .map(|&(p, _)| p)
        .collect();
    let mut pts = Vec::with_capacity(100);
    while pts.len() < 100 {
        let z = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        if special.iter().all(|s| (z - s).norm() > 0.2) {
            pts.push(z);
        }
    }
    pts
}

fn wrap_pi(theta: f64) -> f64 {
    let r = normalize_angle(theta);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Central difference of `log f` along the real axis, with the angle
/// difference branch-corrected into `(−π, π]`.
fn fd_log_derivative(f: &FuncSpec, z: Complex64, h: f64) -> Complex64 {
    let a = f.eval_log(z + c(h, 0.0));
    let b = f.eval_log(z - c(h, 0.0));
    Complex64::new(
        (a.t() - b.t()) / (2.0 * h),
        wrap_pi(a.theta() - b.theta()) / (2.0 * h),
    )
}

#[test]
fn log_derivative_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7261_6e64_0004);
    for f in battery() {
        for z in safe_points(&f, &mut rng) {
            let exact = f.log_derivative(z).expect("point is clear of singularities");
            let fd = fd_log_derivative(&f, z, 1e-6);
            let scale = exact.norm().max(1.0);
            assert!(
                (exact - fd).norm() < 1e-5 * scale,
                "log-derivative mismatch at {z}: {exact} vs {fd}"
            );
        }
    }
}

#[test]
fn spherical_derivative_matches_chordal_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7261_6e64_0005);
    let h = 1e-6;
    for f in battery() {
        for z in safe_points(&f, &mut rng) {
            let exact = f.spherical_derivative(z);
            let quotient = chordal(&f.eval_log(z + c(h, 0.0)), &f.eval_log(z)) / h;
            let scale = exact.max(1e-30);
            assert!(
                (exact - quotient).abs() < 1e-4 * scale.max(quotient),
                "spherical derivative mismatch at {z}: {exact} vs {quotient}"
            );
        }
    }
}
