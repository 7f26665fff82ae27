//! Classification of the limit families attainable by rescaling `{f(nz)}`.
//!
//! For each function shape and each `α ∈ (−1, 1)`, the attainable
//! nonconstant limits form finitely many parametrized families, and the
//! family list depends only on the sign of `α`, never its value. The
//! classifier emits those families as [`FamilyDescriptor`]s collected in a
//! canonically ordered [`DescriptorSet`]:
//!
//! * affine powers `s·(Aζ+C)^e` pinned to a zero or pole of the function
//!   ([`FamilyDescriptor::ScaledAffine`], [`FamilyDescriptor::Power`]),
//! * exponentials `e^{A₁ζ+A₀}` whose growth direction `arg A₁` is confined
//!   to an [`ArgSet`] derived from the leading exponent coefficient
//!   ([`FamilyDescriptor::Exp`]), and
//! * affine precompositions `f(C₁+C₂ζ)` of the function itself
//!   ([`FamilyDescriptor::Precomposition`]).
//!
//! Two descriptors denote the same set of functions whenever their shape
//! data agree up to the free parameters; in particular a coefficient's
//! modulus is never distinguishing (the free positive scale absorbs it), so
//! canonical equality compares coefficient *arguments* only. Pinned
//! coefficient values are retained for reporting.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};
use num_complex::Complex64;

use crate::kernel::{circular_distance, normalize_angle, LogComplex};
use crate::model::{ExpRationalSpec, FuncSpec, PolynomialSpec, RationalSpec};

/// Angular tolerance for descriptor equality and membership decisions.
pub const ANGLE_TOL: f64 = 1e-9;

/// Classification errors.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyError {
    /// `alpha` outside the open interval `(−1, 1)`.
    AlphaOutOfRange { alpha: f64 },
    /// The function is a nonzero constant; its rescalings have no
    /// nonconstant limits.
    ConstantFunction,
    /// A family-instance parameter violates its grammar (zero coefficient,
    /// nonpositive scale, zero exponent).
    InvalidInstance { reason: &'static str },
}

impl core::fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ClassifyError::AlphaOutOfRange { alpha } => {
                write!(f, "alpha {alpha} out of range (-1,1)")
            }
            ClassifyError::ConstantFunction => {
                write!(f, "constant function has no nonconstant rescaling limits")
            }
            ClassifyError::InvalidInstance { reason } => {
                write!(f, "invalid family instance: {reason}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ClassifyError {}

fn check_alpha(alpha: f64) -> Result<(), ClassifyError> {
    if alpha > -1.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(ClassifyError::AlphaOutOfRange { alpha })
    }
}

/// A closed arc on the circle: angles `lo + s` for `0 ≤ s ≤ length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    lo: f64,
    length: f64,
}

impl Arc {
    /// Closed arc starting at `lo` (normalized into `[0, 2π)`) of the given
    /// positive length `≤ 2π`.
    pub fn new(lo: f64, length: f64) -> Self {
        debug_assert!(length > 0.0 && length <= TAU);
        Arc {
            lo: normalize_angle(lo),
            length,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Upper endpoint, reduced into `[0, 2π)` (may wrap below `lo`).
    pub fn hi(&self) -> f64 {
        normalize_angle(self.lo + self.length)
    }

    /// Closed membership with angular slack `tol` at both endpoints.
    pub fn contains(&self, theta: f64, tol: f64) -> bool {
        let s = normalize_angle(theta - self.lo);
        s <= self.length + tol || s >= TAU - tol
    }
}

/// The constraint on `arg A₁` of an exponential family.
#[derive(Debug, Clone, PartialEq)]
pub enum ArgSet {
    /// Exactly one admissible argument.
    Single(f64),
    /// Finitely many admissible arguments, sorted ascending in `[0, 2π)`.
    Finite(Vec<f64>),
    /// A union of closed arcs, pairwise disjoint up to endpoints, sorted by
    /// lower endpoint.
    Arcs(Vec<Arc>),
    /// Every nonzero `A₁` is admissible.
    AllNonzero,
}

impl ArgSet {
    fn finite(mut values: Vec<f64>) -> Self {
        for v in &mut values {
            *v = normalize_angle(*v);
        }
        values.sort_unstable_by(f64::total_cmp);
        // Collapse values that coincide up to rounding (including the pair
        // that meets across the 0/2π seam).
        let mut out: Vec<f64> = Vec::with_capacity(values.len());
        for v in values {
            if out.iter().all(|&u| circular_distance(u, v) > ANGLE_TOL) {
                out.push(v);
            }
        }
        ArgSet::Finite(out)
    }

    fn arcs(mut arcs: Vec<Arc>) -> Self {
        arcs.sort_unstable_by(|a, b| a.lo.total_cmp(&b.lo));
        ArgSet::Arcs(arcs)
    }

    /// Whether the angle `theta` is admissible, within `tol`.
    pub fn contains(&self, theta: f64, tol: f64) -> bool {
        match self {
            ArgSet::Single(v) => circular_distance(*v, theta) <= tol,
            ArgSet::Finite(vs) => vs.iter().any(|&v| circular_distance(v, theta) <= tol),
            ArgSet::Arcs(arcs) => arcs.iter().any(|a| a.contains(theta, tol)),
            ArgSet::AllNonzero => true,
        }
    }

    /// The set rotated by `phi` (the constraint on `−A₁` relative to `A₁`
    /// uses `phi = π`).
    pub fn rotated(&self, phi: f64) -> Self {
        match self {
            ArgSet::Single(v) => ArgSet::Single(normalize_angle(v + phi)),
            ArgSet::Finite(vs) => ArgSet::finite(vs.iter().map(|v| v + phi).collect()),
            ArgSet::Arcs(arcs) => {
                ArgSet::arcs(arcs.iter().map(|a| Arc::new(a.lo + phi, a.length)).collect())
            }
            ArgSet::AllNonzero => ArgSet::AllNonzero,
        }
    }

    fn approx_eq(&self, other: &ArgSet, tol: f64) -> bool {
        match (self, other) {
            (ArgSet::Single(a), ArgSet::Single(b)) => circular_distance(*a, *b) <= tol,
            (ArgSet::Finite(a), ArgSet::Finite(b)) => {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|(x, y)| circular_distance(*x, *y) <= tol)
            }
            (ArgSet::Arcs(a), ArgSet::Arcs(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| {
                        circular_distance(x.lo, y.lo) <= tol
                            && (x.length - y.length).abs() <= tol
                    })
            }
            (ArgSet::AllNonzero, ArgSet::AllNonzero) => true,
            _ => false,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ArgSet::Single(_) => 0,
            ArgSet::Finite(_) => 1,
            ArgSet::Arcs(_) => 2,
            ArgSet::AllNonzero => 3,
        }
    }

    fn first_value(&self) -> f64 {
        match self {
            ArgSet::Single(v) => *v,
            ArgSet::Finite(vs) => vs.first().copied().unwrap_or(0.0),
            ArgSet::Arcs(arcs) => arcs.first().map(|a| a.lo).unwrap_or(0.0),
            ArgSet::AllNonzero => 0.0,
        }
    }
}

/// One parametrized family of limit functions.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyDescriptor {
    /// `c · (ζ + C)^e` with `C ∈ ℂ` free, `|c| > 0` free and
    /// `arg c = arg_total`. When the family is pinned to a zero or pole of
    /// an exponential-type function, `pinned_coeff` records the natural
    /// coefficient (reduced factor times `e^{P}` at the point); the free
    /// positive inner scale makes its modulus non-distinguishing.
    Power {
        arg_total: f64,
        exponent: i32,
        pinned_coeff: Option<Complex64>,
    },
    /// `scale · (Aζ + C)^e` with `A > 0`, `C ∈ ℂ` free — the families of
    /// polynomial and rational rescalings, where `scale` is the leading or
    /// reduced coefficient.
    ScaledAffine { scale: Complex64, exponent: i32 },
    /// `e^{A₁ζ + A₀}` with `A₀ ∈ ℂ` free, `|A₁| > 0` free and
    /// `arg A₁ ∈ args`.
    Exp { args: ArgSet },
    /// `func(C₁ + C₂ζ)` with `C₁ ∈ ℂ`, `C₂ > 0` free.
    Precomposition { func: FuncSpec },
}

impl FamilyDescriptor {
    /// Power family pinned to a concrete coefficient: `arg_total` is the
    /// coefficient's argument.
    pub fn power(coeff: Complex64, exponent: i32) -> Self {
        FamilyDescriptor::Power {
            arg_total: normalize_angle(coeff.arg()),
            exponent,
            pinned_coeff: Some(coeff),
        }
    }

    fn power_polar(arg_total: f64, modulus: f64, exponent: i32) -> Self {
        FamilyDescriptor::Power {
            arg_total: normalize_angle(arg_total),
            exponent,
            pinned_coeff: Some(Complex64::from_polar(modulus, normalize_angle(arg_total))),
        }
    }

    /// The family of reciprocals of this family's members.
    pub fn dual(&self) -> FamilyDescriptor {
        match self {
            FamilyDescriptor::Power {
                arg_total,
                exponent,
                pinned_coeff,
            } => FamilyDescriptor::Power {
                arg_total: normalize_angle(-arg_total),
                exponent: -exponent,
                pinned_coeff: pinned_coeff.map(|c| Complex64::new(1.0, 0.0) / c),
            },
            FamilyDescriptor::ScaledAffine { scale, exponent } => {
                FamilyDescriptor::ScaledAffine {
                    scale: Complex64::new(1.0, 0.0) / scale,
                    exponent: -exponent,
                }
            }
            FamilyDescriptor::Exp { args } => FamilyDescriptor::Exp {
                args: args.rotated(PI),
            },
            FamilyDescriptor::Precomposition { func } => FamilyDescriptor::Precomposition {
                func: func.reciprocal(),
            },
        }
    }

    /// Set-level equality: same variant and same shape data up to the free
    /// parameters (coefficient moduli are absorbed by the free scales).
    pub fn approx_eq(&self, other: &FamilyDescriptor, tol: f64) -> bool {
        match (self, other) {
            (
                FamilyDescriptor::Power {
                    arg_total: a,
                    exponent: e,
                    ..
                },
                FamilyDescriptor::Power {
                    arg_total: b,
                    exponent: f,
                    ..
                },
            ) => e == f && circular_distance(*a, *b) <= tol,
            (
                FamilyDescriptor::ScaledAffine { scale: s, exponent: e },
                FamilyDescriptor::ScaledAffine { scale: t, exponent: f },
            ) => e == f && circular_distance(s.arg(), t.arg()) <= tol,
            (FamilyDescriptor::Exp { args: a }, FamilyDescriptor::Exp { args: b }) => {
                a.approx_eq(b, tol)
            }
            (
                FamilyDescriptor::Precomposition { func: f },
                FamilyDescriptor::Precomposition { func: g },
            ) => f.approx_eq(g, tol),
            _ => false,
        }
    }

    fn sort_key(&self) -> (u8, i32, f64) {
        match self {
            FamilyDescriptor::Power {
                arg_total, exponent, ..
            } => (0, *exponent, *arg_total),
            FamilyDescriptor::ScaledAffine { scale, exponent } => {
                (1, *exponent, normalize_angle(scale.arg()))
            }
            FamilyDescriptor::Exp { args } => (2, args.rank() as i32, args.first_value()),
            FamilyDescriptor::Precomposition { .. } => (3, 0, 0.0),
        }
    }
}

/// A canonically ordered set of family descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorSet {
    items: Vec<FamilyDescriptor>,
}

impl DescriptorSet {
    fn new(mut items: Vec<FamilyDescriptor>) -> Self {
        items.sort_unstable_by(|a, b| {
            let (ra, ea, ta) = a.sort_key();
            let (rb, eb, tb) = b.sort_key();
            ra.cmp(&rb).then(ea.cmp(&eb)).then(ta.total_cmp(&tb))
        });
        DescriptorSet { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, FamilyDescriptor> {
        self.items.iter()
    }

    pub fn descriptors(&self) -> &[FamilyDescriptor] {
        &self.items
    }

    /// Set equality up to tolerance: a bijection pairing each descriptor
    /// with an equal one on the other side.
    pub fn set_eq(&self, other: &DescriptorSet, tol: f64) -> bool {
        if self.items.len() != other.items.len() {
            return false;
        }
        let mut used = vec![false; other.items.len()];
        'outer: for a in &self.items {
            for (i, b) in other.items.iter().enumerate() {
                if !used[i] && a.approx_eq(b, tol) {
                    used[i] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// The set of reciprocal families.
    pub fn dual(&self) -> DescriptorSet {
        DescriptorSet::new(self.items.iter().map(FamilyDescriptor::dual).collect())
    }
}

/// Free-function form of [`DescriptorSet::dual`].
pub fn dual(set: &DescriptorSet) -> DescriptorSet {
    set.dual()
}

/// A concrete member of one of the descriptor grammars, used for membership
/// queries and as the comparison target of numeric verification.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyInstance {
    /// `coeff · (a·ζ + b)^exponent`, `a > 0`.
    Power {
        coeff: Complex64,
        a: f64,
        b: Complex64,
        exponent: i32,
    },
    /// `e^{a1·ζ + a0}`.
    Exp { a1: Complex64, a0: Complex64 },
    /// `func(c1 + c2·ζ)`, `c2 > 0`.
    Precomp {
        func: FuncSpec,
        c1: Complex64,
        c2: f64,
    },
}

impl FamilyInstance {
    pub fn power(
        coeff: Complex64,
        a: f64,
        b: Complex64,
        exponent: i32,
    ) -> Result<Self, ClassifyError> {
        if coeff.re == 0.0 && coeff.im == 0.0 {
            return Err(ClassifyError::InvalidInstance {
                reason: "power coefficient must be nonzero",
            });
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(ClassifyError::InvalidInstance {
                reason: "power inner scale must be positive and finite",
            });
        }
        if exponent == 0 {
            return Err(ClassifyError::InvalidInstance {
                reason: "power exponent must be nonzero",
            });
        }
        Ok(FamilyInstance::Power {
            coeff,
            a,
            b,
            exponent,
        })
    }

    pub fn exp(a1: Complex64, a0: Complex64) -> Result<Self, ClassifyError> {
        if a1.re == 0.0 && a1.im == 0.0 {
            return Err(ClassifyError::InvalidInstance {
                reason: "exponential growth coefficient must be nonzero",
            });
        }
        Ok(FamilyInstance::Exp { a1, a0 })
    }

    pub fn precomp(func: FuncSpec, c1: Complex64, c2: f64) -> Result<Self, ClassifyError> {
        if !(c2 > 0.0) || !c2.is_finite() {
            return Err(ClassifyError::InvalidInstance {
                reason: "precomposition scale must be positive and finite",
            });
        }
        Ok(FamilyInstance::Precomp { func, c1, c2 })
    }

    /// Evaluate the instance at `zeta` in log form.
    pub fn eval_log(&self, zeta: Complex64) -> LogComplex {
        match self {
            FamilyInstance::Power {
                coeff,
                a,
                b,
                exponent,
            } => {
                let base = LogComplex::from_cartesian(zeta * *a + b);
                let powed = base.pow_real(*exponent as f64);
                LogComplex::from_cartesian(*coeff)
                    .mul(&powed)
                    .expect("nonzero finite coefficient times a power cannot be 0*inf")
            }
            FamilyInstance::Exp { a1, a0 } => {
                let q = a1 * zeta + a0;
                LogComplex::finite(q.re, q.im)
            }
            FamilyInstance::Precomp { func, c1, c2 } => func.eval_log(c1 + zeta * *c2),
        }
    }

    /// The pointwise reciprocal instance.
    pub fn reciprocal(&self) -> FamilyInstance {
        match self {
            FamilyInstance::Power {
                coeff,
                a,
                b,
                exponent,
            } => FamilyInstance::Power {
                coeff: Complex64::new(1.0, 0.0) / coeff,
                a: *a,
                b: *b,
                exponent: -exponent,
            },
            FamilyInstance::Exp { a1, a0 } => FamilyInstance::Exp { a1: -a1, a0: -a0 },
            FamilyInstance::Precomp { func, c1, c2 } => FamilyInstance::Precomp {
                func: func.reciprocal(),
                c1: *c1,
                c2: *c2,
            },
        }
    }

    /// The instance multiplied by `e^{iφ}`. Precompositions admit no such
    /// rotation and are returned unchanged.
    pub fn rotated(&self, phi: f64) -> FamilyInstance {
        match self {
            FamilyInstance::Power {
                coeff,
                a,
                b,
                exponent,
            } => FamilyInstance::Power {
                coeff: coeff * Complex64::from_polar(1.0, phi),
                a: *a,
                b: *b,
                exponent: *exponent,
            },
            FamilyInstance::Exp { a1, a0 } => FamilyInstance::Exp {
                a1: *a1,
                a0: a0 + Complex64::new(0.0, phi),
            },
            FamilyInstance::Precomp { .. } => self.clone(),
        }
    }
}

/// Whether `candidate` belongs to one of the families in `set`, with
/// angular/structural tolerance `tol`.
pub fn membership(candidate: &FamilyInstance, set: &DescriptorSet, tol: f64) -> bool {
    set.iter().any(|d| match (candidate, d) {
        (
            FamilyInstance::Power {
                coeff, exponent, ..
            },
            FamilyDescriptor::Power {
                arg_total,
                exponent: e,
                ..
            },
        ) => exponent == e && circular_distance(normalize_angle(coeff.arg()), *arg_total) <= tol,
        (
            FamilyInstance::Power {
                coeff, exponent, ..
            },
            FamilyDescriptor::ScaledAffine { scale, exponent: e },
        ) => exponent == e && circular_distance(coeff.arg(), scale.arg()) <= tol,
        (FamilyInstance::Exp { a1, .. }, FamilyDescriptor::Exp { args }) => {
            args.contains(normalize_angle(a1.arg()), tol)
        }
        (
            FamilyInstance::Precomp { func, .. },
            FamilyDescriptor::Precomposition { func: g },
        ) => func.approx_eq(g, tol),
        _ => false,
    })
}

/// Classify the limit families of the rescalings of `f` at exponent `alpha`.
pub fn classify(f: &FuncSpec, alpha: f64) -> Result<DescriptorSet, ClassifyError> {
    check_alpha(alpha)?;
    match f {
        FuncSpec::Polynomial(p) => Ok(classify_polynomial(p, alpha)),
        FuncSpec::Rational(r) => classify_rational(r, alpha),
        FuncSpec::ExpRational(e) => Ok(classify_exp(e, alpha)),
    }
}

/// The single limit family of a monic one-root polynomial `(z − beta)^k`:
/// `{(Aζ+C)^k}`, independent of `beta` and of `alpha` within `(−1, 1)`.
pub fn classify_monome(
    k: u32,
    beta: Complex64,
    alpha: f64,
) -> Result<DescriptorSet, ClassifyError> {
    check_alpha(alpha)?;
    if k == 0 {
        return Err(ClassifyError::ConstantFunction);
    }
    let _ = beta;
    Ok(DescriptorSet::new(vec![FamilyDescriptor::ScaledAffine {
        scale: Complex64::new(1.0, 0.0),
        exponent: k as i32,
    }]))
}

/// Zero-centered reduced coefficient of a zeros-only product: the leading
/// scalar times the other factors evaluated at zero `i`.
fn polynomial_tilde(leading: Complex64, roots: &[(Complex64, u32)], i: usize) -> Complex64 {
    let (gamma, _) = roots[i];
    let mut acc = leading;
    for (p, &(other, mult)) in roots.iter().enumerate() {
        if p != i {
            acc *= (gamma - other).powi(mult as i32);
        }
    }
    acc
}

fn classify_polynomial(p: &PolynomialSpec, alpha: f64) -> DescriptorSet {
    classify_product(p.leading(), p.roots(), &FuncSpec::Polynomial(p.clone()), alpha)
}

/// Shared rules for zeros-only products (polynomials, or rationals without
/// poles): per-zero reduced families for `0<α<1`, the full-degree leading
/// family for `−1<α<0`, and the affine precomposition at `α=0` — which
/// collapses to the leading family when there is a single distinct zero.
fn classify_product(
    leading: Complex64,
    roots: &[(Complex64, u32)],
    whole: &FuncSpec,
    alpha: f64,
) -> DescriptorSet {
    let degree: u32 = roots.iter().map(|&(_, m)| m).sum();
    let items = if alpha > 0.0 {
        (0..roots.len())
            .map(|i| FamilyDescriptor::ScaledAffine {
                scale: polynomial_tilde(leading, roots, i),
                exponent: roots[i].1 as i32,
            })
            .collect()
    } else if alpha < 0.0 {
        vec![FamilyDescriptor::ScaledAffine {
            scale: leading,
            exponent: degree as i32,
        }]
    } else if roots.len() == 1 {
        vec![FamilyDescriptor::ScaledAffine {
            scale: leading,
            exponent: degree as i32,
        }]
    } else {
        vec![FamilyDescriptor::Precomposition {
            func: whole.clone(),
        }]
    };
    DescriptorSet::new(items)
}

fn classify_rational(r: &RationalSpec, alpha: f64) -> Result<DescriptorSet, ClassifyError> {
    let has_zeros = !r.zeros().is_empty();
    let has_poles = !r.poles().is_empty();
    if !has_zeros && !has_poles {
        return Err(ClassifyError::ConstantFunction);
    }
    if !has_poles {
        return Ok(classify_product(
            r.scalar(),
            r.zeros(),
            &FuncSpec::Rational(r.clone()),
            alpha,
        ));
    }
    if !has_zeros {
        // Pole-only rationals classify as reciprocals of zeros-only
        // products; going through the dual keeps one source of truth.
        let recip = r.reciprocal();
        let whole = FuncSpec::Rational(recip.clone());
        return Ok(classify_product(recip.scalar(), recip.zeros(), &whole, -alpha).dual());
    }
    let items = if alpha > 0.0 {
        (0..r.zeros().len())
            .map(|i| FamilyDescriptor::ScaledAffine {
                scale: r.tilde_reduce(i),
                exponent: r.zeros()[i].1 as i32,
            })
            .collect()
    } else if alpha < 0.0 {
        (0..r.poles().len())
            .map(|j| FamilyDescriptor::ScaledAffine {
                scale: r.hat_reduce(j),
                exponent: -(r.poles()[j].1 as i32),
            })
            .collect()
    } else {
        vec![FamilyDescriptor::Precomposition {
            func: FuncSpec::Rational(r.clone()),
        }]
    };
    Ok(DescriptorSet::new(items))
}

/// The admissible `arg A₁` values of exponential limits pinned exactly on a
/// transition ray: `(arg a_k + (k−1)(±π/2) + (k−1)2πl)/k` over the `2k`
/// sign/ray combinations. Distinct for even `k`; for odd `k` the two sign
/// families coincide and only `k` values survive.
fn ray_pinned_args(ak_arg: f64, k: u32) -> Vec<f64> {
    let kf = k as f64;
    let mut values = Vec::with_capacity(2 * k as usize);
    for l in 0..k {
        let turn = (kf - 1.0) * TAU * (l as f64);
        for sign in [1.0, -1.0] {
            values.push((ak_arg + (kf - 1.0) * sign * FRAC_PI_2 + turn) / kf);
        }
    }
    values
}

fn classify_exp(spec: &ExpRationalSpec, alpha: f64) -> DescriptorSet {
    // Normalize by folding the rational scalar into the exponent's constant
    // coefficient: every descriptor value is invariant under the fold, and
    // normalizing makes the emitted precomposition canonical. Folding
    // rebuilds the exponent's roots; if that fails, the unfolded spec
    // yields the same families.
    let folded;
    let e = match spec.fold_scalar() {
        Ok(f) => {
            folded = f;
            &folded
        }
        Err(_) => spec,
    };
    let k = e.exponent().degree();
    let ak_arg = normalize_angle(e.exponent().leading().arg());
    let r = e.rational();

    let exp_args = if k == 1 {
        ArgSet::Single(ak_arg)
    } else if alpha == 0.0 {
        ArgSet::finite(ray_pinned_args(ak_arg, k))
    } else if k >= 3 {
        ArgSet::AllNonzero
    } else {
        // k = 2: two closed quarter arcs; the negative-α pair is the
        // positive-α pair shifted by π/2 (its complement up to endpoints).
        let base = if alpha > 0.0 { PI / 4.0 } else { 3.0 * PI / 4.0 };
        ArgSet::arcs(vec![
            Arc::new(base + ak_arg / 2.0, FRAC_PI_2),
            Arc::new(base + PI + ak_arg / 2.0, FRAC_PI_2),
        ])
    };

    let mut items = vec![FamilyDescriptor::Exp { args: exp_args }];

    if alpha == 0.0 {
        items.push(FamilyDescriptor::Precomposition {
            func: FuncSpec::ExpRational(e.clone()),
        });
    } else if alpha > 0.0 {
        for i in 0..r.zeros().len() {
            let (gamma, mult) = r.zeros()[i];
            let p = e.exponent().eval(gamma);
            let reduced = r.tilde_reduce(i);
            items.push(FamilyDescriptor::power_polar(
                p.im + reduced.arg(),
                p.re.exp() * reduced.norm(),
                mult as i32,
            ));
        }
    } else {
        for j in 0..r.poles().len() {
            let (beta, mult) = r.poles()[j];
            let p = e.exponent().eval(beta);
            let reduced = r.hat_reduce(j);
            items.push(FamilyDescriptor::power_polar(
                p.im + reduced.arg(),
                p.re.exp() * reduced.norm(),
                -(mult as i32),
            ));
        }
    }
    DescriptorSet::new(items)
}
