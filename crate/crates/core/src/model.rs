//! Structured models of the functions whose rescalings we study.
//!
//! Everything downstream works with `f = R · e^P` where `R` is rational and
//! `P` is a polynomial. The factored data — leading coefficients, zeros and
//! poles with multiplicities — is what the classification formulas consume,
//! so specs keep the factored form as the source of truth and derive dense
//! coefficients from it. Pure polynomials and pure rationals are first-class
//! variants of [`FuncSpec`] rather than degenerate exp-rationals, because
//! their limit families follow different (simpler) rules.
//!
//! Evaluation happens in the log domain ([`LogComplex`]): moduli of the
//! rational factors accumulate as sums of `ln|z − γ|` terms, the polynomial
//! exponent contributes `Re P` and `Im P` directly, and each factor's
//! principal argument is added exactly, with a single `mod 2π` reduction at
//! the very end. Exact hits on zeros and poles short-circuit to the ideal
//! points instead of producing `±∞` arithmetic.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::kernel::LogComplex;

/// Largest supported polynomial degree (for the exponent and for standalone
/// polynomials). Coefficient expansion and the fallback root solve are
/// well-conditioned in this range; beyond it the factored/dense duality the
/// crate relies on starts to erode.
pub const MAX_DEGREE: u32 = 12;

/// Construction and evaluation errors for function specs.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecError {
    /// A leading coefficient or rational scalar was zero.
    ZeroCoefficient,
    /// A polynomial with no degree (constant) where degree ≥ 1 is required.
    ConstantPolynomial,
    /// Degree above [`MAX_DEGREE`].
    DegreeTooHigh { degree: u32 },
    /// A root, zero, or pole was listed with multiplicity 0.
    ZeroMultiplicity,
    /// The same point appears as both a zero and a pole.
    ZeroPoleOverlap { point: Complex64 },
    /// The dense-coefficient root solve did not converge.
    RootSolveFailed,
    /// Logarithmic derivative requested exactly at a zero or pole.
    Singularity { point: Complex64 },
}

impl core::fmt::Display for SpecError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpecError::ZeroCoefficient => write!(f, "leading coefficient or scalar is zero"),
            SpecError::ConstantPolynomial => write!(f, "polynomial must have degree >= 1"),
            SpecError::DegreeTooHigh { degree } => {
                write!(f, "degree {degree} exceeds the supported cap {MAX_DEGREE}")
            }
            SpecError::ZeroMultiplicity => write!(f, "multiplicity must be >= 1"),
            SpecError::ZeroPoleOverlap { point } => {
                write!(f, "point {point} is listed as both zero and pole")
            }
            SpecError::RootSolveFailed => write!(f, "root finding from coefficients failed"),
            SpecError::Singularity { point } => {
                write!(f, "logarithmic derivative is singular at {point}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpecError {}

/// Merge exact-duplicate points into multiplicities, preserving first-seen
/// order. Multiplicity 0 entries are rejected.
fn fold_points(list: &[(Complex64, u32)]) -> Result<Vec<(Complex64, u32)>, SpecError> {
    let mut out: Vec<(Complex64, u32)> = Vec::with_capacity(list.len());
    for &(p, m) in list {
        if m == 0 {
            return Err(SpecError::ZeroMultiplicity);
        }
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, acc)) => *acc += m,
            None => out.push((p, m)),
        }
    }
    Ok(out)
}

/// A polynomial `a_k (z − α₁)^{m₁} ⋯ (z − α_r)^{m_r}` of degree `k ≥ 1`.
///
/// Stores both the factored form (the source of truth) and the dense
/// coefficients `a_0 … a_k` expanded from it once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSpec {
    leading: Complex64,
    roots: Vec<(Complex64, u32)>,
    degree: u32,
    coeffs: Vec<Complex64>,
}

impl PolynomialSpec {
    /// Build from the leading coefficient and the roots with multiplicities.
    /// Duplicate points fold into one entry.
    pub fn from_roots(
        leading: Complex64,
        roots: &[(Complex64, u32)],
    ) -> Result<Self, SpecError> {
        if leading.re == 0.0 && leading.im == 0.0 {
            return Err(SpecError::ZeroCoefficient);
        }
        let roots = fold_points(roots)?;
        let degree: u32 = roots.iter().map(|&(_, m)| m).sum();
        if degree == 0 {
            return Err(SpecError::ConstantPolynomial);
        }
        if degree > MAX_DEGREE {
            return Err(SpecError::DegreeTooHigh { degree });
        }
        let mut coeffs = vec![leading];
        for &(root, mult) in &roots {
            for _ in 0..mult {
                // Multiply the dense form by (z − root).
                coeffs.push(Complex64::new(0.0, 0.0));
                for i in (0..coeffs.len() - 1).rev() {
                    let c = coeffs[i];
                    coeffs[i + 1] += c;
                    coeffs[i] = -root * c;
                }
            }
        }
        Ok(PolynomialSpec {
            leading,
            roots,
            degree,
            coeffs,
        })
    }

    /// Build from dense coefficients `a_0 … a_k` (ascending powers).
    ///
    /// The factored form is recovered numerically (Durand–Kerner with
    /// centroid clustering of nearby iterates into multiplicities), so roots
    /// obtained this way are approximate — good to ~10⁻⁸ for well-separated
    /// roots, and to the usual `ε^{1/m}` for an `m`-fold root. Prefer
    /// [`PolynomialSpec::from_roots`] whenever the factorization is known.
    pub fn from_coefficients(coeffs: &[Complex64]) -> Result<Self, SpecError> {
        let mut coeffs = coeffs.to_vec();
        while let Some(last) = coeffs.last() {
            if last.re == 0.0 && last.im == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.len() < 2 {
            return Err(SpecError::ConstantPolynomial);
        }
        let degree = (coeffs.len() - 1) as u32;
        if degree > MAX_DEGREE {
            return Err(SpecError::DegreeTooHigh { degree });
        }
        let leading = coeffs[coeffs.len() - 1];
        let roots = roots_from_coefficients(&coeffs)?;
        Ok(PolynomialSpec {
            leading,
            roots,
            degree,
            coeffs,
        })
    }

    pub fn leading(&self) -> Complex64 {
        self.leading
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Distinct roots with multiplicities.
    pub fn roots(&self) -> &[(Complex64, u32)] {
        &self.roots
    }

    /// Dense coefficients `a_0 … a_k`, ascending powers.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation of `P(z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner evaluation of `P′(z)`.
    pub fn derivative_eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (1..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[i] * (i as f64);
        }
        acc
    }

    /// Log-domain evaluation through the factored form; exact root hits give
    /// zero. Unlike Horner this cannot overflow for huge `|z|`.
    pub fn eval_log_product(&self, z: Complex64) -> LogComplex {
        let mut t = self.leading.norm().ln();
        let mut theta = self.leading.arg();
        for &(root, mult) in &self.roots {
            let d = z - root;
            if d.re == 0.0 && d.im == 0.0 {
                return LogComplex::zero();
            }
            let m = mult as f64;
            t += m * d.norm().ln();
            theta += m * d.arg();
        }
        LogComplex::finite(t, theta)
    }

    /// The polynomial `−P` (same roots, negated leading/coefficients).
    pub fn negated(&self) -> Self {
        PolynomialSpec {
            leading: -self.leading,
            roots: self.roots.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// `P + c`. Shifting by a constant scrambles the factorization, so the
    /// result is rebuilt from coefficients (approximate roots).
    pub fn with_constant_added(&self, c: Complex64) -> Result<Self, SpecError> {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        PolynomialSpec::from_coefficients(&coeffs)
    }
}

/// Durand–Kerner all-roots iteration on monic-normalized coefficients,
/// followed by clustering of converged iterates into multiplicities.
fn roots_from_coefficients(
    coeffs: &[Complex64],
) -> Result<Vec<(Complex64, u32)>, SpecError> {
    let k = coeffs.len() - 1;
    let lead = coeffs[k];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let scale = 1.0 + monic[..k].iter().map(|c| c.norm()).fold(0.0, f64::max);

    let seed = Complex64::new(0.4, 0.9);
    let mut xs: Vec<Complex64> = (0..k).map(|j| seed.powu(j as u32 + 1) * scale).collect();

    let horner = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };

    let mut converged = false;
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for j in 0..k {
            let mut den = Complex64::new(1.0, 0.0);
            for i in 0..k {
                if i != j {
                    den *= xs[j] - xs[i];
                }
            }
            if den.norm() < 1e-290 {
                // Coincident iterates; nudge apart and retry next sweep.
                xs[j] += Complex64::new(1e-6 * scale, 1e-6 * scale);
                max_step = f64::MAX;
                continue;
            }
            let step = horner(xs[j]) / den;
            xs[j] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 * scale {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecError::RootSolveFailed);
    }

    // Cluster iterates that an m-fold root smeared into an ε^{1/m} blob.
    let cluster_tol = 1e-5 * scale;
    let mut used = vec![false; k];
    let mut out: Vec<(Complex64, u32)> = Vec::new();
    for j in 0..k {
        if used[j] {
            continue;
        }
        let mut members = vec![j];
        used[j] = true;
        for i in (j + 1)..k {
            if !used[i] && (xs[i] - xs[j]).norm() < cluster_tol {
                used[i] = true;
                members.push(i);
            }
        }
        let centroid = members
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &i| acc + xs[i])
            / (members.len() as f64);
        out.push((centroid, members.len() as u32));
    }
    Ok(out)
}

/// A rational function `L · Π (z − γᵢ)^{lᵢ} / Π (z − βⱼ)^{jⱼ}` in factored
/// form. Zero and pole supports are disjoint; either list may be empty
/// (an empty-empty spec is the constant `L`, allowed only as the rational
/// part of an exp-rational).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSpec {
    scalar: Complex64,
    zeros: Vec<(Complex64, u32)>,
    poles: Vec<(Complex64, u32)>,
    l1: u32,
    l2: u32,
}

impl RationalSpec {
    pub fn new(
        scalar: Complex64,
        zeros: &[(Complex64, u32)],
        poles: &[(Complex64, u32)],
    ) -> Result<Self, SpecError> {
        if scalar.re == 0.0 && scalar.im == 0.0 {
            return Err(SpecError::ZeroCoefficient);
        }
        let zeros = fold_points(zeros)?;
        let poles = fold_points(poles)?;
        for &(p, _) in &zeros {
            if poles.iter().any(|&(q, _)| q == p) {
                return Err(SpecError::ZeroPoleOverlap { point: p });
            }
        }
        let l1 = zeros.iter().map(|&(_, m)| m).sum();
        let l2 = poles.iter().map(|&(_, m)| m).sum();
        Ok(RationalSpec {
            scalar,
            zeros,
            poles,
            l1,
            l2,
        })
    }

    /// The constant rational `1`.
    pub fn one() -> Self {
        RationalSpec {
            scalar: Complex64::new(1.0, 0.0),
            zeros: Vec::new(),
            poles: Vec::new(),
            l1: 0,
            l2: 0,
        }
    }

    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    pub fn zeros(&self) -> &[(Complex64, u32)] {
        &self.zeros
    }

    pub fn poles(&self) -> &[(Complex64, u32)] {
        &self.poles
    }

    /// Total zero count `L₁ = Σ lᵢ`.
    pub fn l1(&self) -> u32 {
        self.l1
    }

    /// Total pole count `L₂ = Σ jⱼ`.
    pub fn l2(&self) -> u32 {
        self.l2
    }

    /// Log-domain evaluation; exact hits on zeros/poles give the ideal points.
    pub fn eval_log(&self, z: Complex64) -> LogComplex {
        let mut t = self.scalar.norm().ln();
        let mut theta = self.scalar.arg();
        for &(zero, mult) in &self.zeros {
            let d = z - zero;
            if d.re == 0.0 && d.im == 0.0 {
                return LogComplex::zero();
            }
            let m = mult as f64;
            t += m * d.norm().ln();
            theta += m * d.arg();
        }
        for &(pole, mult) in &self.poles {
            let d = z - pole;
            if d.re == 0.0 && d.im == 0.0 {
                return LogComplex::infinity();
            }
            let m = mult as f64;
            t -= m * d.norm().ln();
            theta -= m * d.arg();
        }
        LogComplex::finite(t, theta)
    }

    /// `R′/R (z) = Σ lᵢ/(z−γᵢ) − Σ jⱼ/(z−βⱼ)`; singular exactly on the support.
    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64, SpecError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(zero, mult) in &self.zeros {
            let d = z - zero;
            if d.re == 0.0 && d.im == 0.0 {
                return Err(SpecError::Singularity { point: z });
            }
            acc += Complex64::new(mult as f64, 0.0) / d;
        }
        for &(pole, mult) in &self.poles {
            let d = z - pole;
            if d.re == 0.0 && d.im == 0.0 {
                return Err(SpecError::Singularity { point: z });
            }
            acc -= Complex64::new(mult as f64, 0.0) / d;
        }
        Ok(acc)
    }

    /// The reduced factor at the `i`-th zero `γ`: the value at `γ` of
    /// `R(z)/(z−γ)^{l}`, i.e. `L · Π_{p≠i}(γ−γ_p)^{l_p} / Π_q (γ−β_q)^{j_q}`.
    ///
    /// This is the coefficient that survives rescaling around `γ`, so it
    /// pins the scale of the power family attached to that zero.
    pub fn tilde_reduce(&self, i: usize) -> Complex64 {
        let (gamma, _) = self.zeros[i];
        let mut acc = self.scalar;
        for (p, &(other, mult)) in self.zeros.iter().enumerate() {
            if p != i {
                acc *= (gamma - other).powi(mult as i32);
            }
        }
        for &(pole, mult) in &self.poles {
            acc *= (gamma - pole).powi(-(mult as i32));
        }
        acc
    }

    /// The reduced factor at the `j`-th pole `β`: the value at `β` of
    /// `R(z) · (z−β)^{j}`. Mirror of [`RationalSpec::tilde_reduce`].
    pub fn hat_reduce(&self, j: usize) -> Complex64 {
        let (beta, _) = self.poles[j];
        let mut acc = self.scalar;
        for &(zero, mult) in &self.zeros {
            acc *= (beta - zero).powi(mult as i32);
        }
        for (q, &(other, mult)) in self.poles.iter().enumerate() {
            if q != j {
                acc *= (beta - other).powi(-(mult as i32));
            }
        }
        acc
    }

    /// `1/R`: zeros and poles swap, scalar inverts.
    pub fn reciprocal(&self) -> Self {
        RationalSpec {
            scalar: Complex64::new(1.0, 0.0) / self.scalar,
            zeros: self.poles.clone(),
            poles: self.zeros.clone(),
            l1: self.l2,
            l2: self.l1,
        }
    }
}

/// `R(z) · e^{P(z)}` with `deg P ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpRationalSpec {
    rational: RationalSpec,
    exponent: PolynomialSpec,
}

impl ExpRationalSpec {
    pub fn new(rational: RationalSpec, exponent: PolynomialSpec) -> Self {
        // PolynomialSpec already guarantees degree ≥ 1.
        ExpRationalSpec { rational, exponent }
    }

    pub fn rational(&self) -> &RationalSpec {
        &self.rational
    }

    pub fn exponent(&self) -> &PolynomialSpec {
        &self.exponent
    }

    /// Log-domain evaluation: the rational part contributes factored log
    /// terms, the exponent contributes `Re P` to `t` and `Im P` to `θ`.
    pub fn eval_log(&self, z: Complex64) -> LogComplex {
        let base = self.rational.eval_log(z);
        if !base.is_finite() {
            return base;
        }
        let p = self.exponent.eval(z);
        if !p.re.is_finite() || !p.im.is_finite() {
            // |z| large enough to overflow Horner (≳10²⁵ for degree 12):
            // saturate by the sign of the real part.
            return if p.re == f64::NEG_INFINITY {
                LogComplex::zero()
            } else {
                LogComplex::infinity()
            };
        }
        LogComplex::finite(base.t() + p.re, base.theta() + p.im)
    }

    /// Rewrite with scalar `1` by folding `Log L` into the exponent's
    /// constant term. The value is unchanged; the exponent's factored form
    /// is rebuilt from coefficients.
    pub fn fold_scalar(&self) -> Result<Self, SpecError> {
        let l = self.rational.scalar();
        if l == Complex64::new(1.0, 0.0) {
            return Ok(self.clone());
        }
        let log_l = Complex64::new(l.norm().ln(), l.arg());
        let exponent = self.exponent.with_constant_added(log_l)?;
        let rational = RationalSpec::new(
            Complex64::new(1.0, 0.0),
            self.rational.zeros(),
            self.rational.poles(),
        )?;
        Ok(ExpRationalSpec { rational, exponent })
    }
}

/// A function whose rescaled family we study: one of the three shapes the
/// classification covers.
#[derive(Debug, Clone, PartialEq)]
pub enum FuncSpec {
    Polynomial(PolynomialSpec),
    Rational(RationalSpec),
    ExpRational(ExpRationalSpec),
}

impl FuncSpec {
    pub fn polynomial(p: PolynomialSpec) -> Self {
        FuncSpec::Polynomial(p)
    }

    pub fn rational(r: RationalSpec) -> Self {
        FuncSpec::Rational(r)
    }

    pub fn exp_rational(rational: RationalSpec, exponent: PolynomialSpec) -> Result<Self, SpecError> {
        Ok(FuncSpec::ExpRational(ExpRationalSpec::new(rational, exponent)))
    }

    /// The exponent polynomial, if this function has one.
    pub fn exponent(&self) -> Option<&PolynomialSpec> {
        match self {
            FuncSpec::ExpRational(e) => Some(e.exponent()),
            _ => None,
        }
    }

    /// The function viewed as `(scalar, zeros, poles)` with an optional
    /// exponent — a kind-insensitive canonical decomposition.
    pub fn rational_view(&self) -> (Complex64, &[(Complex64, u32)], &[(Complex64, u32)]) {
        match self {
            FuncSpec::Polynomial(p) => (p.leading(), p.roots(), &[]),
            FuncSpec::Rational(r) => (r.scalar(), r.zeros(), r.poles()),
            FuncSpec::ExpRational(e) => {
                (e.rational().scalar(), e.rational().zeros(), e.rational().poles())
            }
        }
    }

    /// Log-domain evaluation of `f(z)`.
    pub fn eval_log(&self, z: Complex64) -> LogComplex {
        match self {
            FuncSpec::Polynomial(p) => p.eval_log_product(z),
            FuncSpec::Rational(r) => r.eval_log(z),
            FuncSpec::ExpRational(e) => e.eval_log(z),
        }
    }

    /// The rescaled family member
    /// `f_{n,α}(ζ) = f(k_n z_n + k_n ρ_n ζ) / ρ_n^α` in log form.
    ///
    /// The argument is assembled as `(k_n·z_n) + (k_n·ρ_n)·ζ` — the two
    /// products the explicit recipes control — so exact-for-all-n recipes
    /// stay exact at the floating-point level.
    pub fn rescaled_eval(
        &self,
        alpha: f64,
        kn: u64,
        zn: Complex64,
        rhon: f64,
        zeta: Complex64,
    ) -> LogComplex {
        debug_assert!(rhon > 0.0);
        let knf = kn as f64;
        let w = zn * knf + zeta * (rhon * knf);
        let v = self.eval_log(w);
        if !v.is_finite() || alpha == 0.0 {
            return v;
        }
        LogComplex::finite(v.t() - alpha * rhon.ln(), v.theta())
    }

    /// `f′/f` in closed form; errors exactly on zeros and poles.
    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64, SpecError> {
        match self {
            FuncSpec::Polynomial(p) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(root, mult) in p.roots() {
                    let d = z - root;
                    if d.re == 0.0 && d.im == 0.0 {
                        return Err(SpecError::Singularity { point: z });
                    }
                    acc += Complex64::new(mult as f64, 0.0) / d;
                }
                Ok(acc)
            }
            FuncSpec::Rational(r) => r.log_derivative(z),
            FuncSpec::ExpRational(e) => {
                let base = e.rational().log_derivative(z)?;
                Ok(base + e.exponent().derivative_eval(z))
            }
        }
    }

    /// Spherical derivative `f^#(z) = |f′(z)| / (1 + |f(z)|²)`.
    ///
    /// Computed in the log domain as `|f′/f| / (e^{−t} + e^{t})` with
    /// `t = ln|f|`, which underflows gracefully to 0 where `|f|` explodes or
    /// vanishes fast. Exact hits on simple zeros/poles evaluate the analytic
    /// limit (the modulus of the reduced factor); multiplicity ≥ 2 gives 0.
    pub fn spherical_derivative(&self, z: Complex64) -> f64 {
        let (scalar, zeros, poles) = self.rational_view();
        let _ = scalar;
        if let Some(i) = zeros.iter().position(|&(g, _)| g == z) {
            return if zeros[i].1 >= 2 {
                0.0
            } else {
                self.reduced_log_modulus_at_zero(i).exp()
            };
        }
        if let Some(j) = poles.iter().position(|&(b, _)| b == z) {
            return if poles[j].1 >= 2 {
                0.0
            } else {
                (-self.reduced_log_modulus_at_pole(j)).exp()
            };
        }
        let d = match self.log_derivative(z) {
            Ok(d) => d.norm(),
            Err(_) => return 0.0,
        };
        let t = self.eval_log(z).t();
        if !t.is_finite() {
            return 0.0;
        }
        let s = -t.abs();
        d * s.exp() / (1.0 + (2.0 * s).exp())
    }

    /// `ln` of the modulus of the reduced factor at the `i`-th zero:
    /// `|R̃ e^P|` there. Log-domain so an extreme exponent cannot overflow
    /// until the final `exp`.
    fn reduced_log_modulus_at_zero(&self, i: usize) -> f64 {
        let (scalar, zeros, poles) = self.rational_view();
        let (gamma, _) = zeros[i];
        let mut t = scalar.norm().ln();
        for (p, &(other, mult)) in zeros.iter().enumerate() {
            if p != i {
                t += (mult as f64) * (gamma - other).norm().ln();
            }
        }
        for &(pole, mult) in poles {
            t -= (mult as f64) * (gamma - pole).norm().ln();
        }
        if let Some(exp) = self.exponent() {
            t += exp.eval(gamma).re;
        }
        t
    }

    /// `ln |R̂ e^P|` at the `j`-th pole.
    fn reduced_log_modulus_at_pole(&self, j: usize) -> f64 {
        let (scalar, zeros, poles) = self.rational_view();
        let (beta, _) = poles[j];
        let mut t = scalar.norm().ln();
        for &(zero, mult) in zeros {
            t += (mult as f64) * (beta - zero).norm().ln();
        }
        for (q, &(other, mult)) in poles.iter().enumerate() {
            if q != j {
                t -= (mult as f64) * (beta - other).norm().ln();
            }
        }
        if let Some(exp) = self.exponent() {
            t += exp.eval(beta).re;
        }
        t
    }

    /// `1/f`. Polynomials become pole-only rationals; exp-rationals negate
    /// their exponent.
    pub fn reciprocal(&self) -> FuncSpec {
        match self {
            FuncSpec::Polynomial(p) => {
                let r = RationalSpec::new(
                    Complex64::new(1.0, 0.0) / p.leading(),
                    &[],
                    p.roots(),
                )
                .expect("reciprocal of a valid polynomial is a valid rational");
                FuncSpec::Rational(r)
            }
            FuncSpec::Rational(r) => FuncSpec::Rational(r.reciprocal()),
            FuncSpec::ExpRational(e) => FuncSpec::ExpRational(ExpRationalSpec::new(
                e.rational().reciprocal(),
                e.exponent().negated(),
            )),
        }
    }

    /// Structural near-equality: same zero/pole/scalar data and (when
    /// present) the same exponent coefficients, up to relative tolerance.
    /// Kind-insensitive on the rational side, so a polynomial equals the
    /// zero-only rational with the same data.
    pub fn approx_eq(&self, other: &FuncSpec, tol: f64) -> bool {
        let (s1, z1, p1) = self.rational_view();
        let (s2, z2, p2) = other.rational_view();
        if !complex_close(s1, s2, tol) {
            return false;
        }
        if !point_lists_close(z1, z2, tol) || !point_lists_close(p1, p2, tol) {
            return false;
        }
        match (self.exponent(), other.exponent()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                a.degree() == b.degree()
                    && a.coefficients()
                        .iter()
                        .zip(b.coefficients())
                        .all(|(x, y)| complex_close(*x, *y, tol))
            }
            _ => false,
        }
    }
}

fn complex_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

fn point_lists_close(a: &[(Complex64, u32)], b: &[(Complex64, u32)], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let sort = |l: &[(Complex64, u32)]| {
        let mut v = l.to_vec();
        v.sort_unstable_by(|(p, _), (q, _)| {
            p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im))
        });
        v
    };
    sort(a)
        .iter()
        .zip(&sort(b))
        .all(|((p, m), (q, n))| m == n && complex_close(*p, *q, tol))
}
