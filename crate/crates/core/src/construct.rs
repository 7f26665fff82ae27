//! Explicit rescaling sequences `(k_n, z_n, ρ_n)` that realize a chosen
//! limit function.
//!
//! Each recipe is a deterministic, pure map `n ↦ (k_n, z_n, ρ_n)` packaged
//! with the [`FamilyInstance`] it converges to and an [`Exactness`] tag:
//! exact-for-all-n recipes satisfy `f_{n,α} ≡ g` identically (up to float
//! rounding), limit-only recipes converge as `n → ∞`.
//!
//! Three generator families cover every shape:
//!
//! * closed-form affine settings for powers and precompositions (zero- or
//!   pole-centered, scale-only, or plain `z_n = b/n`),
//! * the interior construction for exponential limits with direction
//!   strictly between two transition rays: a bracketed scalar solve pins
//!   the real part of the constant relation at every `n`
//!   ([`recipe_exp_interior`]), leaving the phase to subsequence
//!   verification, and
//! * the phase-pinned construction exactly on a ray: a damped Newton solve
//!   of the full congruence `P(w) + (L₁−L₂)·Log w − α·ln ρ_n ≡ A₀
//!   (mod 2πi)` pins modulus and phase together
//!   ([`recipe_exp_ray_pinned`]).
//!
//! Reciprocal targets reuse the same generator through [`recipe_dual`].

#[allow(unused_imports)]
use num_traits::Float;

mod solve;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};
use num_complex::Complex64;

use crate::classify::{classify, membership, ClassifyError, FamilyInstance, ANGLE_TOL};
use crate::kernel::{circular_distance, normalize_angle};
use crate::model::{ExpRationalSpec, FuncSpec, PolynomialSpec, RationalSpec, SpecError};
use solve::{brent_root, newton_congruence};

/// Newton damping for the phase-pinned solve.
const NEWTON_DAMPING: f64 = 0.5;
/// Iteration cap for the phase-pinned solve.
const NEWTON_MAX_ITER: u32 = 100;
/// Success threshold for the congruence residual.
const NEWTON_TOL: f64 = 1e-10;
/// Growth constant for the shrinking start-radius schedule
/// `r_n = (c·ln n)^{1/k}`.
const SHRINK_GROWTH: f64 = 4.0;

/// Construction errors.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstructError {
    /// `alpha` outside `(−1, 1)`, or of the wrong sign for the recipe.
    UnsupportedAlpha { alpha: f64, reason: &'static str },
    /// A scale parameter that must be positive and finite is not.
    InvalidScale { value: f64 },
    /// The requested target is not among the classified families of the
    /// function, or required parameters are missing.
    TargetMismatch { reason: &'static str },
    /// Zero/pole index out of range.
    CenterOutOfRange { index: usize, len: usize },
    /// `theta0` is not strictly inside a valid direction window.
    InvalidTheta { theta0: f64 },
    /// The scalar solve bracket carries no sign change; endpoint values of
    /// the pinning equation are reported.
    NoRoot { f_lo: f64, f_hi: f64 },
    /// The Newton solve missed the congruence tolerance; the best iterate
    /// and its residual are reported.
    NewtonDivergence {
        last_iterate: Complex64,
        residual: f64,
    },
    /// `arg A₁` is not the value forced by the chosen ray.
    InfeasibleTarget { required_arg: f64, got_arg: f64 },
    /// Ray index beyond the `2k` sign/ray combinations.
    RayIndexOutOfRange { index: usize, count: usize },
    /// The generator is undefined at this `n` (logarithm schedules need
    /// `n ≥ 2`).
    ScheduleTooSmall { n: u64 },
    /// A table recipe holds no entry for this `n`.
    UnknownScheduleEntry { n: u64 },
    /// The function shape does not admit this recipe.
    UnsupportedShape { reason: &'static str },
    /// Invalid family-instance parameters or classification failure.
    Instance(ClassifyError),
    /// Function-model rebuild failure (scalar folding).
    Spec(SpecError),
}

impl core::fmt::Display for ConstructError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ConstructError::UnsupportedAlpha { alpha, reason } => {
                write!(f, "alpha {alpha} unsupported: {reason}")
            }
            ConstructError::InvalidScale { value } => {
                write!(f, "scale {value} must be positive and finite")
            }
            ConstructError::TargetMismatch { reason } => write!(f, "target mismatch: {reason}"),
            ConstructError::CenterOutOfRange { index, len } => {
                write!(f, "center index {index} out of range ({len} points)")
            }
            ConstructError::InvalidTheta { theta0 } => {
                write!(f, "theta0 {theta0} not strictly inside a valid direction window")
            }
            ConstructError::NoRoot { f_lo, f_hi } => {
                write!(f, "no sign change in solve bracket (endpoints {f_lo}, {f_hi})")
            }
            ConstructError::NewtonDivergence {
                last_iterate,
                residual,
            } => write!(
                f,
                "newton solve stalled at {last_iterate} with residual {residual}"
            ),
            ConstructError::InfeasibleTarget {
                required_arg,
                got_arg,
            } => write!(
                f,
                "target argument {got_arg} infeasible; ray forces {required_arg}"
            ),
            ConstructError::RayIndexOutOfRange { index, count } => {
                write!(f, "ray index {index} out of range ({count} ray choices)")
            }
            ConstructError::ScheduleTooSmall { n } => {
                write!(f, "generator undefined at n = {n} (needs n >= 2)")
            }
            ConstructError::UnknownScheduleEntry { n } => {
                write!(f, "table recipe has no entry for n = {n}")
            }
            ConstructError::UnsupportedShape { reason } => write!(f, "{reason}"),
            ConstructError::Instance(e) => write!(f, "{e}"),
            ConstructError::Spec(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConstructError {}

impl From<ClassifyError> for ConstructError {
    fn from(e: ClassifyError) -> Self {
        ConstructError::Instance(e)
    }
}

impl From<SpecError> for ConstructError {
    fn from(e: SpecError) -> Self {
        ConstructError::Spec(e)
    }
}

/// Whether the rescaled family equals the target identically or only in
/// the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    ExactForAllN,
    LimitOnly,
}

/// One term of a rescaling sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescalePoint {
    pub n: u64,
    pub k_n: u64,
    pub z_n: Complex64,
    pub rho_n: f64,
}

/// Recipe identifier, mirroring which construction produced the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecipeKind {
    Monome,
    PolyAlpha0,
    PolyPos,
    PolyNeg,
    RationalAlpha0,
    ExpPrecomp,
    ExpRayPinned,
    ExpInterior,
    /// Same generator as the inner recipe, retargeted at the reciprocal
    /// family.
    Dual(Box<RecipeKind>),
    /// Explicit sequence table (diagnostics and negative controls).
    Table,
}

/// Start-radius policy for the phase-pinned solve: either `|k_n z_n| ≈ n·r`
/// (a fixed non-normality point at distance `r`) or the slowly growing
/// `|k_n z_n| ≈ (c·ln n)^{1/k}` schedule with `z_n → 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Z0Mode {
    Fixed(f64),
    Shrinking,
}

#[derive(Debug, Clone, PartialEq)]
enum Gen {
    /// Zero-centered affine setting: `ρ_n = (a/n)^{m/(m−α)}`,
    /// `z_n = (a^{α/(m−α)}·c + γ·n^{α/(m−α)}) / n^{1+α/(m−α)}`.
    AffineZero {
        center: Complex64,
        m: u32,
        a: f64,
        c: Complex64,
        alpha: f64,
    },
    /// Scale-only setting for full-degree limits at negative `α`:
    /// `ρ_n = (a/n)^{k/(k−α)}`, `z_n = (c/a)·ρ_n`.
    ScaleOnly {
        a: f64,
        c: Complex64,
        k: u32,
        alpha: f64,
    },
    /// Plain affine precomposition: `z_n = b/n`, `ρ_n = c/n`.
    Precomp { b: Complex64, c: f64 },
    /// Interior construction: direction `theta0` strictly between rays,
    /// radial factor solved per `n`.
    Interior {
        poly: PolynomialSpec,
        dl: f64,
        k: u32,
        theta0: f64,
        c0: f64,
        alpha: f64,
    },
    /// Phase-pinned construction exactly on a ray.
    RayPinned {
        poly: PolynomialSpec,
        dl: f64,
        k: u32,
        ak_mod: f64,
        alpha: f64,
        theta_ray: f64,
        z0: Z0Mode,
        a1_mod: f64,
        a0: Complex64,
    },
    /// Explicit table of points.
    Table { points: Vec<RescalePoint> },
}

/// Per-n state of the interior construction.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorSolveState {
    pub theta0: f64,
    pub c0: f64,
    pub rows: Vec<InteriorRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorRow {
    pub n: u64,
    pub rho_n: f64,
    pub zhat_n: Complex64,
    pub t_n: f64,
    /// Value of the real-part pinning equation at `t_n`.
    pub residual: f64,
}

/// Diagnostics of one phase-pinned Newton solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RaySolveInfo {
    pub n: u64,
    /// Solved `w_n = k_n z_n`.
    pub w: Complex64,
    /// Final congruence residual.
    pub residual: f64,
    pub iterations: u32,
    /// Selected `2πi` branch.
    pub branch: i64,
}

/// A deterministic rescaling sequence with its target limit.
#[derive(Debug, Clone, PartialEq)]
pub struct RescalingRecipe {
    kind: RecipeKind,
    gen: Gen,
    target: FamilyInstance,
    exactness: Exactness,
    undual: Option<Box<RescalingRecipe>>,
}

impl RescalingRecipe {
    pub fn kind(&self) -> &RecipeKind {
        &self.kind
    }

    pub fn target(&self) -> &FamilyInstance {
        &self.target
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    /// The limit of `z_n` (a point of non-normality of `{f(nz)}`).
    pub fn limit_point(&self) -> Complex64 {
        match &self.gen {
            Gen::RayPinned {
                z0: Z0Mode::Fixed(r),
                theta_ray,
                ..
            } => Complex64::from_polar(*r, *theta_ray),
            Gen::Table { points } => points.last().map(|p| p.z_n).unwrap_or_default(),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// Evaluate the generator at one `n`.
    pub fn eval(&self, n: u64) -> Result<RescalePoint, ConstructError> {
        if n == 0 {
            return Err(ConstructError::ScheduleTooSmall { n });
        }
        let nf = n as f64;
        match &self.gen {
            Gen::AffineZero {
                center,
                m,
                a,
                c,
                alpha,
            } => {
                let mf = *m as f64;
                let e = alpha / (mf - alpha);
                let rho_n = (a / nf).powf(mf / (mf - alpha));
                let z_n = (c * a.powf(e) + center * nf.powf(e)) / nf.powf(1.0 + e);
                Ok(RescalePoint { n, k_n: n, z_n, rho_n })
            }
            Gen::ScaleOnly { a, c, k, alpha } => {
                let kf = *k as f64;
                let rho_n = (a / nf).powf(kf / (kf - alpha));
                Ok(RescalePoint {
                    n,
                    k_n: n,
                    z_n: c / *a * rho_n,
                    rho_n,
                })
            }
            Gen::Precomp { b, c } => Ok(RescalePoint {
                n,
                k_n: n,
                z_n: b / nf,
                rho_n: c / nf,
            }),
            Gen::Interior { .. } => self.interior_eval(n).map(|(p, _)| p),
            Gen::RayPinned { .. } => self.ray_eval(n).map(|(p, _)| p),
            Gen::Table { points } => points
                .iter()
                .find(|p| p.n == n)
                .copied()
                .ok_or(ConstructError::UnknownScheduleEntry { n }),
        }
    }

    /// Interior solve rows over a schedule (interior recipes only, possibly
    /// behind duals).
    pub fn interior_state(&self, schedule: &[u64]) -> Result<InteriorSolveState, ConstructError> {
        let (theta0, c0) = match &self.gen {
            Gen::Interior { theta0, c0, .. } => (*theta0, *c0),
            _ => {
                return Err(ConstructError::UnsupportedShape {
                    reason: "solve state exists only for interior recipes",
                })
            }
        };
        let mut rows = Vec::with_capacity(schedule.len());
        for &n in schedule {
            let (_, row) = self.interior_eval(n)?;
            rows.push(row);
        }
        Ok(InteriorSolveState { theta0, c0, rows })
    }

    /// Newton diagnostics at one `n` (phase-pinned recipes only, possibly
    /// behind duals).
    pub fn ray_solve(&self, n: u64) -> Result<RaySolveInfo, ConstructError> {
        match &self.gen {
            Gen::RayPinned { .. } => self.ray_eval(n).map(|(_, info)| info),
            _ => Err(ConstructError::UnsupportedShape {
                reason: "newton diagnostics exist only for phase-pinned recipes",
            }),
        }
    }

    fn interior_eval(&self, n: u64) -> Result<(RescalePoint, InteriorRow), ConstructError> {
        let Gen::Interior {
            poly,
            dl,
            k,
            theta0,
            c0,
            alpha,
        } = &self.gen
        else {
            unreachable!("interior_eval on non-interior generator");
        };
        if n < 2 {
            return Err(ConstructError::ScheduleTooSmall { n });
        }
        let nf = n as f64;
        let kf = *k as f64;
        let ln_n = nf.ln();
        let expo = 1.0 + (kf - 1.0) / kf * ln_n.ln() / ln_n;
        let lam = expo * ln_n;
        let rho_n = (-lam).exp();
        // k_n ẑ_n = e^{iθ₀}·(−ln ρ_n)^{1/k}; the pinning equation reads
        // Re P(t·k_nẑ_n) + (L₁−L₂)·ln|t·k_nẑ_n| + α·(−ln ρ_n) = 0.
        let khat = Complex64::from_polar(lam.powf(1.0 / kf), *theta0);
        let pin = |t: f64| {
            poly.eval(khat * t).re + dl * (lam.ln() / kf + t.ln()) + alpha * lam
        };
        let lo = 0.9 * (c0 / 2.0).powf(1.0 / kf);
        let hi = 1.1 * (2.0 * c0).powf(1.0 / kf);
        let root = brent_root(&pin, lo, hi, 1e-14, 200).map_err(|e| ConstructError::NoRoot {
            f_lo: e.f_lo,
            f_hi: e.f_hi,
        })?;
        let t_n = root.root;
        let z_n = khat * t_n / nf;
        Ok((
            RescalePoint { n, k_n: n, z_n, rho_n },
            InteriorRow {
                n,
                rho_n,
                zhat_n: khat / nf,
                t_n,
                residual: root.residual,
            },
        ))
    }

    fn ray_eval(&self, n: u64) -> Result<(RescalePoint, RaySolveInfo), ConstructError> {
        let Gen::RayPinned {
            poly,
            dl,
            k,
            ak_mod,
            alpha,
            theta_ray,
            z0,
            a1_mod,
            a0,
        } = &self.gen
        else {
            unreachable!("ray_eval on non-pinned generator");
        };
        let nf = n as f64;
        let kf = *k as f64;
        let r_n = match z0 {
            Z0Mode::Fixed(r) => r * nf,
            Z0Mode::Shrinking => {
                if n < 2 {
                    return Err(ConstructError::ScheduleTooSmall { n });
                }
                (SHRINK_GROWTH * nf.ln()).powf(1.0 / kf)
            }
        };
        let rho_n = a1_mod / (kf * ak_mod * r_n.powf(kf - 1.0) * nf);
        let alpha_ln_rho = alpha * rho_n.ln();
        let dlc = Complex64::new(*dl, 0.0);
        let g = |w: Complex64| poly.eval(w) + dlc * w.ln() - alpha_ln_rho;
        let dg = |w: Complex64| poly.derivative_eval(w) + dlc / w;
        let w0 = Complex64::from_polar(r_n, *theta_ray);
        let sol = newton_congruence(g, dg, w0, *a0, NEWTON_DAMPING, NEWTON_MAX_ITER, NEWTON_TOL)
            .map_err(|best| ConstructError::NewtonDivergence {
                last_iterate: best.w,
                residual: best.residual,
            })?;
        Ok((
            RescalePoint {
                n,
                k_n: n,
                z_n: sol.w / nf,
                rho_n,
            },
            RaySolveInfo {
                n,
                w: sol.w,
                residual: sol.residual,
                iterations: sol.iterations,
                branch: sol.branch,
            },
        ))
    }
}

fn check_alpha_open(alpha: f64) -> Result<(), ConstructError> {
    if alpha > -1.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(ConstructError::UnsupportedAlpha {
            alpha,
            reason: "alpha must lie in (-1, 1)",
        })
    }
}

fn check_positive(value: f64) -> Result<(), ConstructError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ConstructError::InvalidScale { value })
    }
}

/// Guard that the recipe's target really is one of the classified families.
fn check_target(f: &FuncSpec, alpha: f64, target: &FamilyInstance) -> Result<(), ConstructError> {
    let families = classify(f, alpha)?;
    if membership(target, &families, ANGLE_TOL) {
        Ok(())
    } else {
        Err(ConstructError::TargetMismatch {
            reason: "target is not among the classified families",
        })
    }
}

/// Exact rescaling of the one-root polynomial `(z − beta)^k` onto
/// `(a·ζ + c)^k`, valid for every `alpha` in `(−1, 1)`.
pub fn recipe_monome(
    k: u32,
    beta: Complex64,
    alpha: f64,
    a: f64,
    c: Complex64,
) -> Result<RescalingRecipe, ConstructError> {
    check_alpha_open(alpha)?;
    check_positive(a)?;
    if k == 0 {
        return Err(ConstructError::UnsupportedShape {
            reason: "monome exponent must be at least 1",
        });
    }
    let target = FamilyInstance::power(Complex64::new(1.0, 0.0), a, c, k as i32)?;
    Ok(RescalingRecipe {
        kind: RecipeKind::Monome,
        gen: Gen::AffineZero {
            center: beta,
            m: k,
            a,
            c,
            alpha,
        },
        target,
        exactness: Exactness::ExactForAllN,
        undual: None,
    })
}

/// Rescaling of a polynomial onto one of its classified families.
///
/// * `alpha = 0`: the plain setting `z_n = c/n`, `ρ_n = a/n`, exact.
/// * `alpha > 0`: zero-centered setting at root `center_index` (required
///   unless the polynomial has a single distinct root).
/// * `alpha < 0`: scale-only setting onto the full-degree family.
pub fn recipe_polynomial(
    p: &PolynomialSpec,
    alpha: f64,
    a: f64,
    c: Complex64,
    center_index: Option<usize>,
) -> Result<RescalingRecipe, ConstructError> {
    check_alpha_open(alpha)?;
    check_positive(a)?;
    let f = FuncSpec::Polynomial(p.clone());
    let single = p.roots().len() == 1;
    let recipe = if alpha == 0.0 {
        let target = if single {
            let (beta, _) = p.roots()[0];
            FamilyInstance::power(p.leading(), a, c - beta, p.degree() as i32)?
        } else {
            FamilyInstance::precomp(f.clone(), c, a)?
        };
        RescalingRecipe {
            kind: RecipeKind::PolyAlpha0,
            gen: Gen::Precomp { b: c, c: a },
            target,
            exactness: Exactness::ExactForAllN,
            undual: None,
        }
    } else if alpha > 0.0 {
        let idx = match center_index {
            Some(i) => i,
            None if single => 0,
            None => {
                return Err(ConstructError::TargetMismatch {
                    reason: "center_index required for multi-root targets",
                })
            }
        };
        if idx >= p.roots().len() {
            return Err(ConstructError::CenterOutOfRange {
                index: idx,
                len: p.roots().len(),
            });
        }
        let (gamma, mult) = p.roots()[idx];
        let mut tilde = p.leading();
        for (q, &(other, om)) in p.roots().iter().enumerate() {
            if q != idx {
                tilde *= (gamma - other).powi(om as i32);
            }
        }
        RescalingRecipe {
            kind: RecipeKind::PolyPos,
            gen: Gen::AffineZero {
                center: gamma,
                m: mult,
                a,
                c,
                alpha,
            },
            target: FamilyInstance::power(tilde, a, c, mult as i32)?,
            exactness: if single {
                Exactness::ExactForAllN
            } else {
                Exactness::LimitOnly
            },
            undual: None,
        }
    } else {
        let at_origin = single && p.roots()[0].0 == Complex64::new(0.0, 0.0);
        RescalingRecipe {
            kind: RecipeKind::PolyNeg,
            gen: Gen::ScaleOnly {
                a,
                c,
                k: p.degree(),
                alpha,
            },
            target: FamilyInstance::power(p.leading(), a, c, p.degree() as i32)?,
            exactness: if at_origin {
                Exactness::ExactForAllN
            } else {
                Exactness::LimitOnly
            },
            undual: None,
        }
    };
    check_target(&f, alpha, &recipe.target)?;
    Ok(recipe)
}

/// Exact rescaling of a rational function onto its affine precomposition
/// `R(b + cζ)` at `alpha = 0`.
pub fn recipe_rational_alpha0(
    r: &RationalSpec,
    b: Complex64,
    c: f64,
) -> Result<RescalingRecipe, ConstructError> {
    check_positive(c)?;
    let f = FuncSpec::Rational(r.clone());
    let target = if r.poles().is_empty() && r.zeros().len() == 1 {
        let (gamma, mult) = r.zeros()[0];
        FamilyInstance::power(r.scalar(), c, b - gamma, mult as i32)?
    } else if r.zeros().is_empty() && r.poles().len() == 1 {
        let (beta, mult) = r.poles()[0];
        FamilyInstance::power(r.scalar(), c, b - beta, -(mult as i32))?
    } else {
        FamilyInstance::precomp(f.clone(), b, c)?
    };
    check_target(&f, 0.0, &target)?;
    Ok(RescalingRecipe {
        kind: RecipeKind::RationalAlpha0,
        gen: Gen::Precomp { b, c },
        target,
        exactness: Exactness::ExactForAllN,
        undual: None,
    })
}

/// Rescaling of a rational function at `alpha ≠ 0`: zero-centered for
/// positive `alpha`, pole-centered (through the reciprocal) for negative
/// `alpha`; `center_index` indexes the zeros or poles respectively.
///
/// The zero-centered setting (and its pole dual) reuses the affine
/// generator with the zero's multiplicity; factors away from the center
/// converge to the reduced coefficient, so the recipe is limit-only unless
/// the function degenerates to a single monome factor.
pub fn recipe_rational(
    r: &RationalSpec,
    alpha: f64,
    a: f64,
    c: Complex64,
    center_index: Option<usize>,
) -> Result<RescalingRecipe, ConstructError> {
    check_alpha_open(alpha)?;
    check_positive(a)?;
    if alpha == 0.0 {
        return Err(ConstructError::UnsupportedAlpha {
            alpha,
            reason: "alpha = 0 uses the plain precomposition setting",
        });
    }
    if alpha < 0.0 {
        // Pole families are reciprocals of the zero families of 1/R.
        let recip = r.reciprocal();
        if !recip.zeros().is_empty() {
            let inner = recipe_rational(&recip, -alpha, a, c, center_index)?;
            return Ok(recipe_dual(&inner));
        }
        // No poles at all: the function is a zeros-only product and the
        // full-degree scale-only setting applies directly.
        let f = FuncSpec::Rational(r.clone());
        let single_origin =
            r.zeros().len() == 1 && r.zeros()[0].0 == Complex64::new(0.0, 0.0);
        let target = FamilyInstance::power(r.scalar(), a, c, r.l1() as i32)?;
        check_target(&f, alpha, &target)?;
        return Ok(RescalingRecipe {
            kind: RecipeKind::PolyNeg,
            gen: Gen::ScaleOnly {
                a,
                c,
                k: r.l1(),
                alpha,
            },
            target,
            exactness: if single_origin {
                Exactness::ExactForAllN
            } else {
                Exactness::LimitOnly
            },
            undual: None,
        });
    }
    // alpha > 0.
    if r.zeros().is_empty() {
        // Only poles: the single full-degree pole family, via the dual of
        // the scale-only setting for 1/R.
        let inner = recipe_rational(&r.reciprocal(), -alpha, a, c, None)?;
        return Ok(recipe_dual(&inner));
    }
    let idx = match center_index {
        Some(i) => i,
        None if r.zeros().len() == 1 => 0,
        None => {
            return Err(ConstructError::TargetMismatch {
                reason: "center_index required for multi-zero targets",
            })
        }
    };
    if idx >= r.zeros().len() {
        return Err(ConstructError::CenterOutOfRange {
            index: idx,
            len: r.zeros().len(),
        });
    }
    let (gamma, mult) = r.zeros()[idx];
    let f = FuncSpec::Rational(r.clone());
    let single_factor = r.poles().is_empty() && r.zeros().len() == 1;
    let target = FamilyInstance::power(r.tilde_reduce(idx), a, c, mult as i32)?;
    check_target(&f, alpha, &target)?;
    Ok(RescalingRecipe {
        kind: RecipeKind::PolyPos,
        gen: Gen::AffineZero {
            center: gamma,
            m: mult,
            a,
            c,
            alpha,
        },
        target,
        exactness: if single_factor {
            Exactness::ExactForAllN
        } else {
            Exactness::LimitOnly
        },
        undual: None,
    })
}

/// Exact rescaling of `R·e^P` onto its affine precomposition at
/// `alpha = 0`.
pub fn recipe_exp_precomp(
    f: &ExpRationalSpec,
    b: Complex64,
    c: f64,
) -> Result<RescalingRecipe, ConstructError> {
    check_positive(c)?;
    let func = FuncSpec::ExpRational(f.clone());
    let target = FamilyInstance::precomp(func.clone(), b, c)?;
    check_target(&func, 0.0, &target)?;
    Ok(RescalingRecipe {
        kind: RecipeKind::ExpPrecomp,
        gen: Gen::Precomp { b, c },
        target,
        exactness: Exactness::ExactForAllN,
        undual: None,
    })
}

/// Rescaling of `R·e^P` onto a zero- or pole-pinned power family
/// (`alpha > 0` centers on zero `center_index`; `alpha < 0` on pole
/// `center_index`, through the reciprocal).
pub fn recipe_exp_power(
    f: &ExpRationalSpec,
    alpha: f64,
    a: f64,
    c: Complex64,
    center_index: Option<usize>,
) -> Result<RescalingRecipe, ConstructError> {
    check_alpha_open(alpha)?;
    check_positive(a)?;
    if alpha == 0.0 {
        return Err(ConstructError::UnsupportedAlpha {
            alpha,
            reason: "power families exist only for alpha != 0",
        });
    }
    let folded = f.fold_scalar()?;
    if alpha < 0.0 {
        let recip = ExpRationalSpec::new(
            folded.rational().reciprocal(),
            folded.exponent().negated(),
        );
        let inner = recipe_exp_power(&recip, -alpha, a, c, center_index)?;
        return Ok(recipe_dual(&inner));
    }
    let zeros = folded.rational().zeros();
    if zeros.is_empty() {
        return Err(ConstructError::TargetMismatch {
            reason: "no zero-pinned families: the function has no zeros",
        });
    }
    let idx = match center_index {
        Some(i) => i,
        None if zeros.len() == 1 => 0,
        None => {
            return Err(ConstructError::TargetMismatch {
                reason: "center_index required for multi-zero targets",
            })
        }
    };
    if idx >= zeros.len() {
        return Err(ConstructError::CenterOutOfRange {
            index: idx,
            len: zeros.len(),
        });
    }
    let (gamma, mult) = zeros[idx];
    let p_at = folded.exponent().eval(gamma);
    let reduced = folded.rational().tilde_reduce(idx);
    let coeff = Complex64::from_polar(p_at.re.exp() * reduced.norm(), p_at.im + reduced.arg());
    let func = FuncSpec::ExpRational(f.clone());
    let target = FamilyInstance::power(coeff, a, c, mult as i32)?;
    check_target(&func, alpha, &target)?;
    Ok(RescalingRecipe {
        kind: RecipeKind::PolyPos,
        gen: Gen::AffineZero {
            center: gamma,
            m: mult,
            a,
            c,
            alpha,
        },
        target,
        exactness: Exactness::LimitOnly,
        undual: None,
    })
}

/// Interior exponential construction: `z_n` points in direction `theta0`
/// strictly between two transition rays, `alpha ∈ (0, 1)`, exponent degree
/// `k ≥ 2`. Negative `alpha` targets are reached by dualizing the recipe
/// for `1/f` at `−alpha`.
pub fn recipe_exp_interior(
    f: &ExpRationalSpec,
    alpha: f64,
    theta0: f64,
) -> Result<RescalingRecipe, ConstructError> {
    check_alpha_open(alpha)?;
    if !(alpha > 0.0) {
        return Err(ConstructError::UnsupportedAlpha {
            alpha,
            reason: "interior construction needs 0 < alpha < 1; dualize for negative alpha",
        });
    }
    let folded = f.fold_scalar()?;
    let k = folded.exponent().degree();
    if k < 2 {
        return Err(ConstructError::UnsupportedShape {
            reason: "interior construction needs exponent degree >= 2",
        });
    }
    let kf = k as f64;
    let ak = folded.exponent().leading();
    let theta0 = normalize_angle(theta0);
    // Validity: cos(arg a_k + k·θ₀) strictly negative, so the radial
    // pinning equation has a positive solution.
    let cos_dir = (ak.arg() + kf * theta0).cos();
    if cos_dir >= -1e-12 {
        return Err(ConstructError::InvalidTheta { theta0 });
    }
    let c0 = -alpha / (ak.norm() * cos_dir);
    let a1 = Complex64::from_polar(
        kf * ak.norm() * c0.powf((kf - 1.0) / kf),
        normalize_angle(ak.arg() + (kf - 1.0) * theta0),
    );
    let dl = folded.rational().l1() as f64 - folded.rational().l2() as f64;
    let func = FuncSpec::ExpRational(f.clone());
    let target = FamilyInstance::exp(a1, Complex64::new(0.0, 0.0))?;
    check_target(&func, alpha, &target)?;
    Ok(RescalingRecipe {
        kind: RecipeKind::ExpInterior,
        gen: Gen::Interior {
            poly: folded.exponent().clone(),
            dl,
            k,
            theta0,
            c0,
            alpha,
        },
        target,
        exactness: Exactness::LimitOnly,
        undual: None,
    })
}

/// The ray angle and forced `arg A₁` of the `ray_index`-th sign/ray
/// combination (index `2l` is the `+` choice on ray `l`, `2l+1` the `−`
/// choice), out of the `2k` combinations.
pub fn ray_pinned_direction(
    f: &ExpRationalSpec,
    ray_index: usize,
) -> Result<(f64, f64), ConstructError> {
    let k = f.exponent().degree();
    let count = 2 * k as usize;
    if ray_index >= count {
        return Err(ConstructError::RayIndexOutOfRange {
            index: ray_index,
            count,
        });
    }
    let kf = k as f64;
    let l = (ray_index / 2) as f64;
    let sign = if ray_index % 2 == 0 { 1.0 } else { -1.0 };
    let ak_arg = normalize_angle(f.exponent().leading().arg());
    let theta_ray = normalize_angle((sign * FRAC_PI_2 - ak_arg) / kf + TAU * l / kf);
    let arg_a1 = normalize_angle((ak_arg + (kf - 1.0) * (sign * FRAC_PI_2 + TAU * l)) / kf);
    Ok((theta_ray, arg_a1))
}

/// Phase-pinned exponential construction exactly on a transition ray: the
/// full constant relation is solved (mod `2πi`) per `n`, so the whole
/// sequence converges to `e^{a1·ζ + a0}` without passing to a subsequence.
/// `arg a1` must be the value the chosen ray forces.
pub fn recipe_exp_ray_pinned(
    f: &ExpRationalSpec,
    alpha: f64,
    z0: Z0Mode,
    ray_index: usize,
    a1: Complex64,
    a0: Complex64,
) -> Result<RescalingRecipe, ConstructError> {
    check_alpha_open(alpha)?;
    if let Z0Mode::Fixed(r) = z0 {
        check_positive(r)?;
    }
    let folded = f.fold_scalar()?;
    let (theta_ray, forced_arg) = ray_pinned_direction(&folded, ray_index)?;
    let target = FamilyInstance::exp(a1, a0)?;
    let got_arg = normalize_angle(a1.arg());
    if circular_distance(got_arg, forced_arg) > ANGLE_TOL {
        return Err(ConstructError::InfeasibleTarget {
            required_arg: forced_arg,
            got_arg,
        });
    }
    let func = FuncSpec::ExpRational(f.clone());
    check_target(&func, alpha, &target)?;
    let k = folded.exponent().degree();
    let pure_exp = folded.rational().zeros().is_empty() && folded.rational().poles().is_empty();
    let dl = folded.rational().l1() as f64 - folded.rational().l2() as f64;
    Ok(RescalingRecipe {
        kind: RecipeKind::ExpRayPinned,
        gen: Gen::RayPinned {
            poly: folded.exponent().clone(),
            dl,
            k,
            ak_mod: folded.exponent().leading().norm(),
            alpha,
            theta_ray,
            z0,
            a1_mod: a1.norm(),
            a0,
        },
        target,
        exactness: if k == 1 && pure_exp {
            Exactness::ExactForAllN
        } else {
            Exactness::LimitOnly
        },
        undual: None,
    })
}

/// The same generator retargeted at the reciprocal family: `f_{n,α} → g`
/// exactly when `(1/f)_{n,−α} → 1/g` (the chordal metric is inversion
/// invariant). Involutive.
pub fn recipe_dual(r: &RescalingRecipe) -> RescalingRecipe {
    if let Some(inner) = &r.undual {
        return (**inner).clone();
    }
    RescalingRecipe {
        kind: RecipeKind::Dual(Box::new(r.kind.clone())),
        gen: r.gen.clone(),
        target: r.target.reciprocal(),
        exactness: r.exactness,
        undual: Some(Box::new(r.clone())),
    }
}

/// Recipe from an explicit sequence table — diagnostics and negative
/// controls only; no validation against the classifier.
pub fn recipe_table(
    points: Vec<RescalePoint>,
    target: FamilyInstance,
    exactness: Exactness,
) -> RescalingRecipe {
    RescalingRecipe {
        kind: RecipeKind::Table,
        gen: Gen::Table { points },
        target,
        exactness,
        undual: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::chordal;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(radius: f64, per_side: u32) -> Vec<Complex64> {
        let mut pts = Vec::new();
        for i in 0..per_side {
            for j in 0..per_side {
                let x = -radius + 2.0 * radius * i as f64 / (per_side - 1) as f64;
                let y = -radius + 2.0 * radius * j as f64 / (per_side - 1) as f64;
                if x * x + y * y <= radius * radius + 1e-12 {
                    pts.push(c(x, y));
                }
            }
        }
        pts
    }

    fn exp_zk(k: u32) -> ExpRationalSpec {
        ExpRationalSpec::new(
            RationalSpec::one(),
            PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(0.0, 0.0), k)]).unwrap(),
        )
    }

    #[test]
    fn monome_recipe_is_float_exact() {
        // k=2, β=3, α=0.5, A=2, C=1+i: the rescaled monome equals
        // (2ζ + 1+i)² identically.
        let f = FuncSpec::Polynomial(
            PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(3.0, 0.0), 2)]).unwrap(),
        );
        let r = recipe_monome(2, c(3.0, 0.0), 0.5, 2.0, c(1.0, 1.0)).unwrap();
        let g = r.target().clone();
        assert_eq!(r.exactness(), Exactness::ExactForAllN);
        for &n in &[10u64, 1_000, 1_000_000] {
            let pt = r.eval(n).unwrap();
            for zeta in grid(2.0, 9) {
                let fv = f.rescaled_eval(0.5, pt.k_n, pt.z_n, pt.rho_n, zeta);
                let gv = g.eval_log(zeta);
                assert!(
                    chordal(&fv, &gv) < 1e-10,
                    "n={n} zeta={zeta} error too large"
                );
            }
        }
    }

    #[test]
    fn monome_negative_alpha_formula_values() {
        // k=2, β=0, α=−0.5, A=1, C=0: ρ_n = n^{−4/5}, z_n = 0.
        let r = recipe_monome(2, c(0.0, 0.0), -0.5, 1.0, c(0.0, 0.0)).unwrap();
        let pt = r.eval(32).unwrap();
        assert!((pt.rho_n - 32f64.powf(-0.8)).abs() < 1e-16);
        assert_eq!(pt.z_n, c(0.0, 0.0));
    }

    #[test]
    fn polynomial_alpha0_is_plain_substitution() {
        let p = PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(0.0, 0.0), 2)]).unwrap();
        let r = recipe_polynomial(&p, 0.0, 1.0, c(0.0, 1.0), None).unwrap();
        let pt = r.eval(10).unwrap();
        assert_eq!(pt.z_n, c(0.0, 0.1));
        assert_eq!(pt.rho_n, 0.1);
        assert_eq!(r.exactness(), Exactness::ExactForAllN);
    }

    #[test]
    fn polynomial_negative_alpha_scale_only() {
        // 3z² at α=−0.5, A=1, C=2: ρ_n = n^{−4/5}, z_n = 2·n^{−4/5}.
        let p = PolynomialSpec::from_roots(c(3.0, 0.0), &[(c(0.0, 0.0), 2)]).unwrap();
        let r = recipe_polynomial(&p, -0.5, 1.0, c(2.0, 0.0), None).unwrap();
        let pt = r.eval(100).unwrap();
        assert!((pt.rho_n - 100f64.powf(-0.8)).abs() < 1e-16);
        assert!((pt.z_n - c(2.0 * 100f64.powf(-0.8), 0.0)).norm() < 1e-16);
        assert_eq!(r.exactness(), Exactness::ExactForAllN);
    }

    #[test]
    fn polynomial_zero_centered_recipe_converges() {
        // z(z−1) at α=0.5 centered on the root at 0: target −(ζ)·1 with
        // coefficient −1; the other factor converges only in the limit.
        let p = PolynomialSpec::from_roots(
            c(1.0, 0.0),
            &[(c(0.0, 0.0), 1), (c(1.0, 0.0), 1)],
        )
        .unwrap();
        let f = FuncSpec::Polynomial(p.clone());
        let r = recipe_polynomial(&p, 0.5, 1.0, c(0.0, 0.0), Some(0)).unwrap();
        assert_eq!(r.exactness(), Exactness::LimitOnly);
        let g = r.target().clone();
        let mut last = f64::INFINITY;
        for &n in &[100u64, 10_000, 1_000_000] {
            let pt = r.eval(n).unwrap();
            let mut sup: f64 = 0.0;
            for zeta in grid(1.0, 7) {
                let fv = f.rescaled_eval(0.5, pt.k_n, pt.z_n, pt.rho_n, zeta);
                sup = sup.max(chordal(&fv, &g.eval_log(zeta)));
            }
            assert!(sup < last, "error not shrinking at n={n}");
            last = sup;
        }
        assert!(last < 1e-2);
    }

    #[test]
    fn rational_alpha0_recipe_handles_poles_exactly() {
        // z/(z−2) recentered at the pole: the target has a pole at ζ = 0
        // and the generator hits it exactly.
        let r = RationalSpec::new(c(1.0, 0.0), &[(c(0.0, 0.0), 1)], &[(c(2.0, 0.0), 1)])
            .unwrap();
        let f = FuncSpec::Rational(r.clone());
        let rec = recipe_rational_alpha0(&r, c(2.0, 0.0), 1.0).unwrap();
        let g = rec.target().clone();
        let pt = rec.eval(10).unwrap();
        let fv = f.rescaled_eval(0.0, pt.k_n, pt.z_n, pt.rho_n, c(0.0, 0.0));
        assert!(fv.is_infinite());
        assert_eq!(chordal(&fv, &g.eval_log(c(0.0, 0.0))), 0.0);
        for zeta in grid(2.0, 9) {
            let fv = f.rescaled_eval(0.0, pt.k_n, pt.z_n, pt.rho_n, zeta);
            assert!(chordal(&fv, &g.eval_log(zeta)) < 1e-12);
        }
    }

    #[test]
    fn rational_pole_recipe_is_dual_of_zero_recipe() {
        let r = RationalSpec::new(c(1.0, 0.0), &[], &[(c(0.0, 0.0), 2)]).unwrap();
        let rec = recipe_rational(&r, -0.5, 1.0, c(0.0, 0.0), Some(0)).unwrap();
        assert!(matches!(rec.kind(), RecipeKind::Dual(_)));
        assert_eq!(rec.exactness(), Exactness::ExactForAllN);
        match rec.target() {
            FamilyInstance::Power { exponent, .. } => assert_eq!(*exponent, -2),
            other => panic!("unexpected target {other:?}"),
        }
        // Exactness carries through the dual: 1/z² rescaled is identically
        // (ζ)⁻² under the inherited generator.
        let f = FuncSpec::Rational(r);
        let g = rec.target().clone();
        let pt = rec.eval(1000).unwrap();
        for zeta in grid(2.0, 9) {
            let fv = f.rescaled_eval(-0.5, pt.k_n, pt.z_n, pt.rho_n, zeta);
            assert!(chordal(&fv, &g.eval_log(zeta)) < 1e-10);
        }
    }

    #[test]
    fn interior_recipe_reference_solve() {
        // e^{z²}, α=0.5, θ₀=π/2: C₀ = 0.5 and t_n = √0.5 exactly (the
        // pinning equation is −λt² + λ/2 = 0 for every n).
        let f = exp_zk(2);
        let r = recipe_exp_interior(&f, 0.5, core::f64::consts::FRAC_PI_2).unwrap();
        let state = r.interior_state(&[10, 1_000, 1_000_000]).unwrap();
        assert!((state.c0 - 0.5).abs() < 1e-15);
        for row in &state.rows {
            assert!((row.t_n - 0.5f64.sqrt()).abs() < 1e-12, "t_n off at n={}", row.n);
            assert!(row.residual.abs() < 1e-10);
        }
        // Target direction: arg A₁ = arg a₂ + θ₀ = π/2.
        match r.target() {
            FamilyInstance::Exp { a1, .. } => {
                assert!(circular_distance(a1.arg(), core::f64::consts::FRAC_PI_2) < 1e-12);
            }
            other => panic!("unexpected target {other:?}"),
        }
    }

    #[test]
    fn interior_recipe_normalization_factor_approaches_one() {
        // k_nρ_n·|k_nẑ_n|^{k−1} = (1 + (k−1)/k·lnln n/ln n)^{(k−1)/k} → 1.
        let f = exp_zk(2);
        let r = recipe_exp_interior(&f, 0.5, core::f64::consts::FRAC_PI_2).unwrap();
        let state = r.interior_state(&[100, 10_000, 1_000_000]).unwrap();
        let mut last = f64::INFINITY;
        for row in &state.rows {
            let nf = row.n as f64;
            let factor = nf * row.rho_n * (row.zhat_n * nf).norm();
            assert!((factor - 1.0).abs() < last, "factor not approaching 1");
            last = (factor - 1.0).abs();
        }
        assert!(last < 0.05);
    }

    #[test]
    fn interior_rejects_boundary_and_wrong_alpha() {
        let f = exp_zk(2);
        assert!(matches!(
            recipe_exp_interior(&f, 0.5, core::f64::consts::FRAC_PI_4),
            Err(ConstructError::InvalidTheta { .. })
        ));
        assert!(matches!(
            recipe_exp_interior(&f, -0.5, core::f64::consts::FRAC_PI_2),
            Err(ConstructError::UnsupportedAlpha { .. })
        ));
        assert!(matches!(
            recipe_exp_interior(&exp_zk(1), 0.5, core::f64::consts::FRAC_PI_2),
            Err(ConstructError::UnsupportedShape { .. })
        ));
    }

    #[test]
    fn interior_solve_small_residual_for_cubic_with_zero() {
        // z·e^{z³} at α = 0.25, θ₀ = π/3 (interior of the first window).
        let f = ExpRationalSpec::new(
            RationalSpec::new(c(1.0, 0.0), &[(c(0.0, 0.0), 1)], &[]).unwrap(),
            PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(0.0, 0.0), 3)]).unwrap(),
        );
        let r = recipe_exp_interior(&f, 0.25, core::f64::consts::FRAC_PI_3).unwrap();
        let state = r.interior_state(&[1_000, 1_000_000]).unwrap();
        for row in &state.rows {
            assert!(row.residual.abs() < 1e-10, "residual {} at n={}", row.residual, row.n);
        }
    }

    #[test]
    fn pinned_linear_exponential_is_exact() {
        // e^z, α=0, target e^ζ: the congruence solve lands on
        // w_n = 2πi·m_n exactly.
        let f = exp_zk(1);
        let func = FuncSpec::ExpRational(f.clone());
        let r = recipe_exp_ray_pinned(
            &f,
            0.0,
            Z0Mode::Shrinking,
            0,
            c(1.0, 0.0),
            c(0.0, 0.0),
        )
        .unwrap();
        assert_eq!(r.exactness(), Exactness::ExactForAllN);
        let g = r.target().clone();
        for &n in &[10u64, 1_000, 1_000_000] {
            let pt = r.eval(n).unwrap();
            for zeta in grid(2.0, 9) {
                let fv = func.rescaled_eval(0.0, pt.k_n, pt.z_n, pt.rho_n, zeta);
                assert!(
                    chordal(&fv, &g.eval_log(zeta)) < 1e-12,
                    "n={n} zeta={zeta}"
                );
            }
        }
    }

    #[test]
    fn pinned_quadratic_converges_on_unit_disk() {
        // e^{z²}, α=0, ray π/4: limit-only with error shrinking below 1e-2
        // by n = 10⁶ on |ζ| ≤ 1.
        let f = exp_zk(2);
        let func = FuncSpec::ExpRational(f.clone());
        let (_, forced) = ray_pinned_direction(&f, 0).unwrap();
        let a1 = Complex64::from_polar(1.0, forced);
        let r = recipe_exp_ray_pinned(&f, 0.0, Z0Mode::Shrinking, 0, a1, c(0.0, 0.0)).unwrap();
        let g = r.target().clone();
        let mut sups = Vec::new();
        for &n in &[100u64, 10_000, 1_000_000] {
            let pt = r.eval(n).unwrap();
            let info = r.ray_solve(n).unwrap();
            assert!(info.residual < 1e-10);
            let mut sup: f64 = 0.0;
            for zeta in grid(1.0, 9) {
                let fv = func.rescaled_eval(0.0, pt.k_n, pt.z_n, pt.rho_n, zeta);
                sup = sup.max(chordal(&fv, &g.eval_log(zeta)));
            }
            sups.push(sup);
        }
        assert!(sups[0] > sups[1] && sups[1] > sups[2], "{sups:?}");
        assert!(sups[2] < 1e-2, "{sups:?}");
    }

    #[test]
    fn pinned_rejects_off_ray_argument() {
        let f = exp_zk(1);
        let err = recipe_exp_ray_pinned(
            &f,
            0.0,
            Z0Mode::Shrinking,
            0,
            c(0.0, 1.0),
            c(0.0, 0.0),
        )
        .unwrap_err();
        assert!(matches!(err, ConstructError::InfeasibleTarget { .. }));
    }

    #[test]
    fn dual_recipe_is_involutive_and_shares_the_generator() {
        let r = recipe_monome(2, c(0.0, 0.0), 0.5, 1.0, c(0.0, 0.0)).unwrap();
        let d = recipe_dual(&r);
        match d.target() {
            FamilyInstance::Power { exponent, .. } => assert_eq!(*exponent, -2),
            other => panic!("unexpected dual target {other:?}"),
        }
        assert_eq!(d.eval(100).unwrap(), r.eval(100).unwrap());
        assert_eq!(recipe_dual(&d), r);
    }

    #[test]
    fn table_recipe_reports_unknown_entries() {
        let pts = vec![RescalePoint {
            n: 10,
            k_n: 10,
            z_n: c(0.3, 0.0),
            rho_n: 0.05,
        }];
        let target = FamilyInstance::exp(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let r = recipe_table(pts, target, Exactness::LimitOnly);
        assert!(r.eval(10).is_ok());
        assert!(matches!(
            r.eval(20),
            Err(ConstructError::UnknownScheduleEntry { n: 20 })
        ));
    }
}
