//! Log-polar arithmetic on the extended complex plane and the chordal metric.
//!
//! Values of `f = R · e^P` overflow `f64` long before the geometry of the
//! Riemann sphere becomes degenerate: `e^{z²}` at `z = 30` is `e^{900}`, far
//! outside cartesian range but a perfectly ordinary point near the north
//! pole. [`LogComplex`] therefore stores a nonzero finite value `w` as
//! `(t, θ) = (ln|w|, arg w)` and keeps the two ideal points `0` and `∞` as
//! explicit tags. Arithmetic stays in the log domain; nothing here can
//! overflow for inputs that are themselves representable.
//!
//! [`chordal`] measures the distance between two such points on the sphere,
//!
//! ```text
//! χ(w₁, w₂) = |w₁ − w₂| / (√(1+|w₁|²) · √(1+|w₂|²)),    χ(w, ∞) = 1/√(1+|w|²),
//! ```
//!
//! normalized so that antipodal points are at distance 1. The implementation
//! never leaves the unit-modulus range: operands with `|w| > 1` are replaced
//! by their reciprocals (χ is inversion-invariant), and mixed-scale pairs are
//! reduced by factoring out the larger modulus.

#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

/// `2π`, the period of every angle in this crate.
pub const TAU: f64 = core::f64::consts::TAU;

/// Reduce an angle to the canonical interval `[0, 2π)`.
#[inline]
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    // `r == TAU` can appear after the addition when `theta` is a tiny
    // negative number; fold it back.
    if r >= TAU {
        0.0
    } else {
        r + 0.0 // maps -0.0 to +0.0
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
#[inline]
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

/// Errors from indeterminate extended-plane operations.
///
/// These indicate a bug in the caller (an evaluation path that reached
/// `0 · ∞` is not meaningful on the sphere), so call sites propagate them
/// rather than papering over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelError {
    /// `0 · ∞` or `∞ · 0`.
    IndeterminateProduct,
    /// `∞ + ∞` under strict addition.
    IndeterminateSum,
    /// `0^p` with `p ≤ 0`, or `∞^p` with `p ≥ 0`, under strict powers.
    PowDomain,
}

impl core::fmt::Display for KernelError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            KernelError::IndeterminateProduct => write!(f, "indeterminate product 0 * inf"),
            KernelError::IndeterminateSum => write!(f, "indeterminate sum inf + inf"),
            KernelError::PowDomain => write!(f, "power undefined for this base and exponent"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for KernelError {}

/// Which stratum of the extended plane a [`LogComplex`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// A nonzero finite value, described by `(t, theta)`.
    Finite,
    /// The origin. Carries no argument.
    Zero,
    /// The point at infinity. Carries no argument.
    Infinity,
}

/// A point of the extended complex plane in log-polar form.
///
/// For a finite nonzero `w`, `t = ln|w|` and `theta = arg w ∈ [0, 2π)`.
/// `t` is unrestricted: `t = 10⁶` is a legal value even though the
/// cartesian counterpart `e^{10⁶}` is not representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    t: f64,
    theta: f64,
    kind: Kind,
}

impl LogComplex {
    /// The finite value `e^{t + iθ}`; `theta` is reduced to `[0, 2π)`.
    #[inline]
    pub fn finite(t: f64, theta: f64) -> Self {
        debug_assert!(t.is_finite() && theta.is_finite());
        LogComplex {
            t,
            theta: normalize_angle(theta),
            kind: Kind::Finite,
        }
    }

    /// The origin.
    #[inline]
    pub const fn zero() -> Self {
        LogComplex {
            t: f64::NEG_INFINITY,
            theta: 0.0,
            kind: Kind::Zero,
        }
    }

    /// The point at infinity.
    #[inline]
    pub const fn infinity() -> Self {
        LogComplex {
            t: f64::INFINITY,
            theta: 0.0,
            kind: Kind::Infinity,
        }
    }

    /// The multiplicative unit.
    #[inline]
    pub fn one() -> Self {
        LogComplex::finite(0.0, 0.0)
    }

    /// Log-modulus `ln|w|`. `−∞` for zero, `+∞` for infinity.
    #[inline]
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Argument in `[0, 2π)`. Zero and infinity report `0`.
    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn kind(&self) -> Kind {
        self.kind
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.kind == Kind::Zero
    }

    #[inline]
    pub fn is_infinite(&self) -> bool {
        self.kind == Kind::Infinity
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.kind == Kind::Finite
    }

    /// Classify a cartesian value. `0 ↦ zero`; non-finite components map to
    /// infinity (the only way cartesian arithmetic can leave the plane).
    pub fn from_cartesian(w: Complex64) -> Self {
        if w.re == 0.0 && w.im == 0.0 {
            return LogComplex::zero();
        }
        if !w.re.is_finite() || !w.im.is_finite() {
            return LogComplex::infinity();
        }
        LogComplex::finite(w.norm().ln(), w.arg())
    }

    /// Back to cartesian. Exact round trips hold for `|t| ≲ 690`; beyond
    /// that the result saturates to `0` or to an infinite component.
    pub fn to_cartesian(&self) -> Complex64 {
        match self.kind {
            Kind::Zero => Complex64::new(0.0, 0.0),
            Kind::Infinity => Complex64::new(f64::INFINITY, f64::INFINITY),
            Kind::Finite => Complex64::from_polar(self.t.exp(), self.theta),
        }
    }

    /// Multiplicative inverse; swaps zero and infinity.
    #[inline]
    pub fn recip(&self) -> Self {
        match self.kind {
            Kind::Zero => LogComplex::infinity(),
            Kind::Infinity => LogComplex::zero(),
            Kind::Finite => LogComplex::finite(-self.t, -self.theta),
        }
    }

    /// Product. Errors on `0 · ∞`, which always signals a caller bug.
    pub fn mul(&self, rhs: &Self) -> Result<Self, KernelError> {
        match (self.kind, rhs.kind) {
            (Kind::Zero, Kind::Infinity) | (Kind::Infinity, Kind::Zero) => {
                Err(KernelError::IndeterminateProduct)
            }
            (Kind::Zero, _) | (_, Kind::Zero) => Ok(LogComplex::zero()),
            (Kind::Infinity, _) | (_, Kind::Infinity) => Ok(LogComplex::infinity()),
            (Kind::Finite, Kind::Finite) => {
                Ok(LogComplex::finite(self.t + rhs.t, self.theta + rhs.theta))
            }
        }
    }

    /// Sum. Factors out the larger modulus so the exponentiated part never
    /// exceeds 1:
    ///
    /// ```text
    /// a + b = a · (1 + e^{t_b − t_a + i(θ_b − θ_a)}),    t_a ≥ t_b.
    /// ```
    ///
    /// `∞ + x` is `∞` for every `x` including `∞` itself — on the sphere two
    /// infinite representatives still sum to the north pole. Use
    /// [`LogComplex::add_strict`] to reject `∞ + ∞` instead. Exactly opposite
    /// finite values (equal `t`, arguments differing by exactly `π`) cancel
    /// to zero.
    pub fn add(&self, rhs: &Self) -> Self {
        match (self.kind, rhs.kind) {
            (Kind::Zero, _) => *rhs,
            (_, Kind::Zero) => *self,
            (Kind::Infinity, _) | (_, Kind::Infinity) => LogComplex::infinity(),
            (Kind::Finite, Kind::Finite) => {
                let (big, small) = if self.t >= rhs.t {
                    (self, rhs)
                } else {
                    (rhs, self)
                };
                let d = small.t - big.t;
                let dtheta = small.theta - big.theta;
                if d == 0.0 && (dtheta == core::f64::consts::PI || dtheta == -core::f64::consts::PI)
                {
                    return LogComplex::zero();
                }
                let inner = Complex64::new(1.0, 0.0) + Complex64::from_polar(d.exp(), dtheta);
                if inner.re == 0.0 && inner.im == 0.0 {
                    return LogComplex::zero();
                }
                LogComplex::finite(big.t + inner.norm().ln(), big.theta + inner.arg())
            }
        }
    }

    /// Sum that refuses `∞ + ∞` (used where two genuinely independent
    /// divergent terms would make the result meaningless).
    pub fn add_strict(&self, rhs: &Self) -> Result<Self, KernelError> {
        if self.is_infinite() && rhs.is_infinite() {
            return Err(KernelError::IndeterminateSum);
        }
        Ok(self.add(rhs))
    }

    /// Real power `w^p`: `(t, θ) ↦ (p·t, p·θ mod 2π)`.
    ///
    /// Total version: `w^0 = 1` for every `w`, and zero/infinity follow the
    /// sign of `p` (`0^p` is `0` for `p > 0` and `∞` for `p < 0`; reversed
    /// for `∞^p`).
    pub fn pow_real(&self, p: f64) -> Self {
        if p == 0.0 {
            return LogComplex::one();
        }
        match self.kind {
            Kind::Zero => {
                if p > 0.0 {
                    LogComplex::zero()
                } else {
                    LogComplex::infinity()
                }
            }
            Kind::Infinity => {
                if p > 0.0 {
                    LogComplex::infinity()
                } else {
                    LogComplex::zero()
                }
            }
            Kind::Finite => LogComplex::finite(p * self.t, p * self.theta),
        }
    }

    /// Real power that errors when the base is zero with `p ≤ 0` or infinite
    /// with `p ≥ 0`. Callers use this where the base is known to be a
    /// positive scale factor and anything else is a bug.
    pub fn pow_real_strict(&self, p: f64) -> Result<Self, KernelError> {
        match self.kind {
            Kind::Zero if p <= 0.0 => Err(KernelError::PowDomain),
            Kind::Infinity if p >= 0.0 => Err(KernelError::PowDomain),
            _ => Ok(self.pow_real(p)),
        }
    }
}

/// Chordal (spherical) distance between two extended-plane points, in `[0, 1]`.
///
/// Exactly symmetric in its arguments (operands are ordered canonically
/// before any arithmetic), invariant under simultaneous inversion, and free
/// of overflow for any representable `t`.
pub fn chordal(a: &LogComplex, b: &LogComplex) -> f64 {
    let raw = match (a.kind, b.kind) {
        (Kind::Zero, Kind::Zero) | (Kind::Infinity, Kind::Infinity) => 0.0,
        (Kind::Zero, Kind::Infinity) | (Kind::Infinity, Kind::Zero) => 1.0,
        (Kind::Zero, Kind::Finite) => modulus_over_sqrt(b),
        (Kind::Finite, Kind::Zero) => modulus_over_sqrt(a),
        (Kind::Infinity, Kind::Finite) => modulus_over_sqrt(&b.recip()),
        (Kind::Finite, Kind::Infinity) => modulus_over_sqrt(&a.recip()),
        (Kind::Finite, Kind::Finite) => chordal_finite(a, b),
    };
    raw.clamp(0.0, 1.0)
}

/// `|w| / √(1+|w|²)`, i.e. χ(0, w), branch-stable for any `t`.
fn modulus_over_sqrt(w: &LogComplex) -> f64 {
    if w.t <= 0.0 {
        let m = w.t.exp();
        m / (1.0 + m * m).sqrt()
    } else {
        let inv = (-w.t).exp();
        1.0 / (1.0 + inv * inv).sqrt()
    }
}

fn chordal_finite(a: &LogComplex, b: &LogComplex) -> f64 {
    // Canonical operand order makes χ(a, b) bit-identical to χ(b, a).
    let (p, q) = if (a.t, a.theta) <= (b.t, b.theta) {
        (a, b)
    } else {
        (b, a)
    };
    if p.t <= 0.0 && q.t <= 0.0 {
        // Both within the unit disk: the textbook formula is safe.
        let wp = p.to_cartesian();
        let wq = q.to_cartesian();
        let mp = p.t.exp();
        let mq = q.t.exp();
        (wp - wq).norm() / ((1.0 + mp * mp).sqrt() * (1.0 + mq * mq).sqrt())
    } else if p.t >= 0.0 && q.t >= 0.0 {
        // Both outside: χ is inversion-invariant, so compare reciprocals.
        chordal_finite(&p.recip(), &q.recip())
    } else {
        // Straddling the unit circle (p inside, q outside, since p.t ≤ q.t):
        // factor |q| out of numerator and denominator.
        //   χ = |1 − p/q| / (√(1+|p|²) · √(1+|q|⁻²))
        let u = Complex64::from_polar((p.t - q.t).exp(), p.theta - q.theta);
        let num = (Complex64::new(1.0, 0.0) - u).norm();
        let mp = p.t.exp();
        let mq_inv = (-q.t).exp();
        num / ((1.0 + mp * mp).sqrt() * (1.0 + mq_inv * mq_inv).sqrt())
    }
}
