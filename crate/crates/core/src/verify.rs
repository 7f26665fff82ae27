//! Numerical verification that a rescaling recipe converges to its target.
//!
//! The verifier never trusts a recipe's own bookkeeping: it re-evaluates
//! the rescaled family `f_{n,α}` on a disk grid and measures the chordal
//! sup distance to the claimed limit at every `n` of a schedule.
//!
//! Interior constructions pin only the modulus of the constant relation,
//! so the full sequence carries a free phase per `n` and only subsequences
//! converge. [`VerifyMode::Subsequence`] recovers such a subsequence
//! deterministically: per-`n` phase residuals are clustered on the circle,
//! the largest cluster is selected, and the target is rotated by the
//! cluster's circular mean before errors are measured. [`VerifyMode::Full`]
//! scores every `n` against the unrotated target.
//!
//! [`check_exponent_relations`] reports the raw coefficient relations behind
//! exponential limits (higher-order terms vanishing, the linear
//! coefficient approaching `A₁`, the constant relation holding), and
//! [`marty_scan`] fields the spherical derivative of `{f(nz)}` to make
//! non-normality visible on and off the transition rays.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use num_complex::Complex64;

use crate::classify::FamilyInstance;
use crate::construct::{ConstructError, RescalePoint, RescalingRecipe};
use crate::kernel::{chordal, normalize_angle};
use crate::model::FuncSpec;

/// Width of the circular window used to cluster phase residuals.
const CLUSTER_WINDOW: f64 = 0.3;
/// Smallest admissible cluster, as a fraction of the schedule.
const CLUSTER_MIN_FRACTION: f64 = 0.25;

/// Verification errors.
#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    /// No phase cluster covers the required fraction of the schedule.
    EmptySubsequence,
    /// The claimed limit and the recipe's target are structurally
    /// different families.
    InconsistentTarget,
    InvalidGrid { reason: &'static str },
    InvalidSchedule { reason: &'static str },
    /// The recipe failed to produce a point for some scheduled `n`.
    Recipe(ConstructError),
}

impl core::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VerifyError::EmptySubsequence => {
                write!(f, "no phase cluster covers enough of the schedule")
            }
            VerifyError::InconsistentTarget => {
                write!(f, "claimed limit and recipe target are different families")
            }
            VerifyError::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
            VerifyError::InvalidSchedule { reason } => write!(f, "invalid schedule: {reason}"),
            VerifyError::Recipe(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for VerifyError {}

impl From<ConstructError> for VerifyError {
    fn from(e: ConstructError) -> Self {
        VerifyError::Recipe(e)
    }
}

/// A square lattice clipped to the closed disk `|ζ| ≤ radius`. The side
/// count is odd so the lattice always contains `ζ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    radius: f64,
    points_per_side: u32,
    pole_guard: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            radius: 2.0,
            points_per_side: 21,
            pole_guard: 0.05,
        }
    }
}

impl GridSpec {
    pub fn new(radius: f64, points_per_side: u32, pole_guard: f64) -> Result<Self, VerifyError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(VerifyError::InvalidGrid {
                reason: "radius must be positive and finite",
            });
        }
        if points_per_side < 5 || points_per_side % 2 == 0 {
            return Err(VerifyError::InvalidGrid {
                reason: "points per side must be odd and at least 5",
            });
        }
        if !(pole_guard >= 0.0) || !pole_guard.is_finite() {
            return Err(VerifyError::InvalidGrid {
                reason: "pole guard must be nonnegative and finite",
            });
        }
        Ok(GridSpec {
            radius,
            points_per_side,
            pole_guard,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn points_per_side(&self) -> u32 {
        self.points_per_side
    }

    pub fn pole_guard(&self) -> f64 {
        self.pole_guard
    }

    /// All grid points inside the closed disk.
    pub fn points(&self) -> Vec<Complex64> {
        disk_grid(Complex64::new(0.0, 0.0), self.radius, self.points_per_side)
    }

    /// Grid points at least `pole_guard` away from every pole of the
    /// target in the `ζ`-plane. Chordal comparisons are pole-safe and use
    /// the full lattice; this subset is for difference-quotient style
    /// diagnostics that cannot straddle a pole.
    pub fn safe_points(&self, target: &FamilyInstance) -> Vec<Complex64> {
        let poles = target_poles(target);
        self.points()
            .into_iter()
            .filter(|p| poles.iter().all(|q| (p - q).norm() > self.pole_guard))
            .collect()
    }
}

fn disk_grid(center: Complex64, radius: f64, per_side: u32) -> Vec<Complex64> {
    let mut pts = Vec::new();
    let denom = (per_side - 1) as f64;
    for i in 0..per_side {
        for j in 0..per_side {
            let x = -radius + 2.0 * radius * i as f64 / denom;
            let y = -radius + 2.0 * radius * j as f64 / denom;
            let p = center + Complex64::new(x, y);
            if x * x + y * y <= radius * radius * (1.0 + 1e-12) {
                pts.push(p);
            }
        }
    }
    pts
}

/// Poles of a target instance in the `ζ`-plane.
fn target_poles(target: &FamilyInstance) -> Vec<Complex64> {
    match target {
        FamilyInstance::Power { a, b, exponent, .. } if *exponent < 0 => {
            vec![-b / *a]
        }
        FamilyInstance::Precomp { func, c1, c2 } => {
            let (_, _, poles) = func.rational_view();
            poles.iter().map(|&(beta, _)| (beta - c1) / *c2).collect()
        }
        _ => Vec::new(),
    }
}

/// Whether every scheduled `n` must converge, or a deterministic
/// subsequence is selected by phase clustering first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Full,
    Subsequence,
}

/// Outcome of a convergence run.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub schedule: Vec<u64>,
    /// Chordal sup distance to the (possibly rotated) target, per `n`.
    pub sup_error: Vec<f64>,
    /// Phase residual of the constant relation in `(−π, π]`, per `n`;
    /// zero for non-exponential combinations.
    pub phase_dispersion: Vec<f64>,
    /// Which schedule entries the verdict is based on.
    pub selected: Vec<bool>,
    pub mode: VerifyMode,
    pub tolerance: f64,
    /// Target rotation `e^{iφ}` applied before measuring (subsequence
    /// mode only; zero otherwise).
    pub rotation: f64,
    pub verdict: bool,
}

fn validate_schedule(schedule: &[u64]) -> Result<(), VerifyError> {
    if schedule.is_empty() {
        return Err(VerifyError::InvalidSchedule {
            reason: "schedule is empty",
        });
    }
    if schedule[0] == 0 {
        return Err(VerifyError::InvalidSchedule {
            reason: "schedule entries must be at least 1",
        });
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(VerifyError::InvalidSchedule {
            reason: "schedule must be strictly increasing",
        });
    }
    Ok(())
}

/// Wrap an angle into `(−π, π]`.
fn wrap_pi(theta: f64) -> f64 {
    let r = normalize_angle(theta);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Phase residual of the constant relation at one `n`: the imaginary part
/// of `P(w) + (L₁−L₂)·Log w` against `Im A₀`, wrapped to `(−π, π]`.
/// Functions without an exponential factor have no phase freedom.
fn phase_residual(f: &FuncSpec, pt: &RescalePoint, a0_im: f64) -> f64 {
    let FuncSpec::ExpRational(e) = f else {
        return 0.0;
    };
    let folded = match e.fold_scalar() {
        Ok(x) => x,
        Err(_) => e.clone(),
    };
    let w = pt.z_n * pt.k_n as f64;
    let dl = folded.rational().l1() as f64 - folded.rational().l2() as f64;
    let im = folded.exponent().eval(w).im + dl * w.arg();
    wrap_pi(im - a0_im)
}

/// Largest circular cluster of `phases` within a fixed window: returns the
/// membership mask and the cluster's circular mean. Deterministic — ties
/// resolve to the earliest window start.
fn cluster_circular(phases: &[f64], window: f64) -> (Vec<bool>, f64, usize) {
    let m = phases.len();
    let norm: Vec<f64> = phases.iter().map(|&p| normalize_angle(p)).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        norm[a]
            .partial_cmp(&norm[b])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut best_start = 0;
    let mut best_len = 1;
    for s in 0..m {
        let base = norm[order[s]];
        let mut len = 1;
        for t in 1..m {
            let idx = (s + t) % m;
            let ang = norm[order[idx]];
            let delta = if s + t >= m {
                ang + TAU - base
            } else {
                ang - base
            };
            if delta <= window {
                len += 1;
            } else {
                break;
            }
        }
        if len > best_len {
            best_len = len;
            best_start = s;
        }
    }
    let mut selected = vec![false; m];
    let (mut sum_sin, mut sum_cos) = (0.0f64, 0.0f64);
    for t in 0..best_len {
        let idx = order[(best_start + t) % m];
        selected[idx] = true;
        sum_sin += norm[idx].sin();
        sum_cos += norm[idx].cos();
    }
    let center = sum_sin.atan2(sum_cos);
    (selected, center, best_len)
}

/// Measure convergence of `f_{n,α}` along `recipe` to the claimed limit
/// `g` over a schedule of `n` values.
///
/// Only structural agreement between `g` and the recipe's target is
/// required (same family shape), so perturbed targets run and fail
/// numerically instead of being rejected up front.
///
/// The verdict passes when the final selected error is below `tolerance`
/// and the tail of selected errors (last three) does not grow — each step
/// must shrink or already sit below tolerance.
#[allow(clippy::too_many_arguments)]
pub fn verify_convergence(
    f: &FuncSpec,
    alpha: f64,
    recipe: &RescalingRecipe,
    g: &FamilyInstance,
    grid: &GridSpec,
    schedule: &[u64],
    tolerance: f64,
    mode: VerifyMode,
) -> Result<ConvergenceReport, VerifyError> {
    validate_schedule(schedule)?;
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(VerifyError::InvalidGrid {
            reason: "tolerance must be positive and finite",
        });
    }
    if core::mem::discriminant(g) != core::mem::discriminant(recipe.target()) {
        return Err(VerifyError::InconsistentTarget);
    }
    let pts: Vec<RescalePoint> = schedule
        .iter()
        .map(|&n| recipe.eval(n))
        .collect::<Result<_, _>>()?;
    let a0_im = match g {
        FamilyInstance::Exp { a0, .. } => a0.im,
        _ => 0.0,
    };
    let phases: Vec<f64> = pts.iter().map(|p| phase_residual(f, p, a0_im)).collect();

    let (selected, rotation) = match mode {
        VerifyMode::Full => (vec![true; schedule.len()], 0.0),
        VerifyMode::Subsequence => {
            let (sel, center, size) = cluster_circular(&phases, CLUSTER_WINDOW);
            let need = (CLUSTER_MIN_FRACTION * schedule.len() as f64).ceil() as usize;
            if size < need.max(1) {
                return Err(VerifyError::EmptySubsequence);
            }
            (sel, center)
        }
    };
    let g_used = match mode {
        VerifyMode::Full => g.clone(),
        VerifyMode::Subsequence => g.rotated(rotation),
    };

    let zetas = grid.points();
    let mut sup_error = Vec::with_capacity(pts.len());
    for pt in &pts {
        let mut sup: f64 = 0.0;
        for &zeta in &zetas {
            let fv = f.rescaled_eval(alpha, pt.k_n, pt.z_n, pt.rho_n, zeta);
            let gv = g_used.eval_log(zeta);
            sup = sup.max(chordal(&fv, &gv));
        }
        sup_error.push(sup);
    }

    let picked: Vec<f64> = sup_error
        .iter()
        .zip(&selected)
        .filter(|(_, &s)| s)
        .map(|(&e, _)| e)
        .collect();
    let final_err = *picked.last().expect("cluster is nonempty");
    let mut verdict = final_err < tolerance;
    let tail = &picked[picked.len().saturating_sub(3)..];
    for pair in tail.windows(2) {
        verdict &= pair[1] < pair[0] || pair[1] < tolerance;
    }

    Ok(ConvergenceReport {
        schedule: schedule.to_vec(),
        sup_error,
        phase_dispersion: phases,
        selected,
        mode,
        tolerance,
        rotation,
        verdict,
    })
}

/// One row of vanishing higher-order coefficients: the modulus of the
/// `ζ^j` term contributed by the leading exponent coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationRow {
    pub j: u32,
    pub residuals: Vec<f64>,
}

/// Raw coefficient relations behind an exponential limit, per scheduled
/// `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationTable {
    pub schedule: Vec<u64>,
    /// `j = k, …, 2`: `|a_k·C(k,j)·(k_nρ_n)^j·(k_nz_n)^{k−j}|`, which must
    /// vanish for the exponent to become affine in `ζ`.
    pub rows: Vec<RelationRow>,
    /// `|A₁(n) − a₁|` for the full linear coefficient
    /// `A₁(n) = P′(w)·k_nρ_n + (L₁−L₂)·k_nρ_n/w`.
    pub a1_row: Vec<f64>,
    /// The raw `A₁(n)` values behind [`RelationTable::a1_row`].
    pub a1_values: Vec<Complex64>,
    /// Real part of the constant relation:
    /// `|Re[P(w) + (L₁−L₂)·Log w] − α·ln ρ_n − Re a₀|`.
    pub a0_row: Vec<f64>,
}

fn binom(k: u32, j: u32) -> f64 {
    let j = j.min(k - j);
    let mut acc = 1.0;
    for i in 0..j {
        acc = acc * (k - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Evaluate the coefficient relations that make `f_{n,α}` exponential in
/// the limit, against the recipe's own target. The function must carry an
/// exponential factor and the target must be an exponential family.
pub fn check_exponent_relations(
    f: &FuncSpec,
    alpha: f64,
    recipe: &RescalingRecipe,
    schedule: &[u64],
) -> Result<RelationTable, VerifyError> {
    validate_schedule(schedule)?;
    let FuncSpec::ExpRational(e) = f else {
        return Err(VerifyError::Recipe(ConstructError::UnsupportedShape {
            reason: "coefficient relations need an exponential factor",
        }));
    };
    let FamilyInstance::Exp { a1, a0 } = recipe.target() else {
        return Err(VerifyError::InconsistentTarget);
    };
    let folded = e.fold_scalar().map_err(ConstructError::Spec)?;
    let poly = folded.exponent();
    let k = poly.degree();
    let ak_mod = poly.leading().norm();
    let dl = folded.rational().l1() as f64 - folded.rational().l2() as f64;

    let pts: Vec<RescalePoint> = schedule
        .iter()
        .map(|&n| recipe.eval(n))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    for j in (2..=k).rev() {
        let mut residuals = Vec::with_capacity(pts.len());
        for pt in &pts {
            let knf = pt.k_n as f64;
            let w_mod = (pt.z_n * knf).norm();
            let s = pt.rho_n * knf;
            residuals.push(ak_mod * binom(k, j) * s.powi(j as i32) * w_mod.powi((k - j) as i32));
        }
        rows.push(RelationRow { j, residuals });
    }

    let mut a1_row = Vec::with_capacity(pts.len());
    let mut a1_values = Vec::with_capacity(pts.len());
    let mut a0_row = Vec::with_capacity(pts.len());
    for pt in &pts {
        let knf = pt.k_n as f64;
        let w = pt.z_n * knf;
        let s = pt.rho_n * knf;
        let lin = poly.derivative_eval(w) * s + dl * s / w;
        a1_values.push(lin);
        a1_row.push((lin - a1).norm());
        let re = poly.eval(w).re + dl * w.norm().ln() - alpha * pt.rho_n.ln();
        a0_row.push((re - a0.re).abs());
    }

    Ok(RelationTable {
        schedule: schedule.to_vec(),
        rows,
        a1_row,
        a1_values,
        a0_row,
    })
}

/// Spherical-derivative field of the family `{f(nz)}` over a disk.
#[derive(Debug, Clone, PartialEq)]
pub struct MartyScan {
    pub schedule: Vec<u64>,
    pub points: Vec<Complex64>,
    /// `values[i][p]` = `n_i · f^#(n_i · points[p])`.
    pub values: Vec<Vec<f64>>,
    /// Per-`n` maximum over the disk.
    pub maxima: Vec<f64>,
}

/// Field the spherical derivative of `{f(nz)}` on a disk grid. Unbounded
/// growth along a subsequence is the Marty-criterion signature of
/// non-normality; bounded fields certify normal neighborhoods.
pub fn marty_scan(
    f: &FuncSpec,
    center: Complex64,
    radius: f64,
    points_per_side: u32,
    schedule: &[u64],
) -> Result<MartyScan, VerifyError> {
    validate_schedule(schedule)?;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(VerifyError::InvalidGrid {
            reason: "radius must be positive and finite",
        });
    }
    if points_per_side < 5 || points_per_side % 2 == 0 {
        return Err(VerifyError::InvalidGrid {
            reason: "points per side must be odd and at least 5",
        });
    }
    let points = disk_grid(center, radius, points_per_side);
    let mut values = Vec::with_capacity(schedule.len());
    let mut maxima = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let nf = n as f64;
        let field: Vec<f64> = points
            .iter()
            .map(|&z| nf * f.spherical_derivative(z * nf))
            .collect();
        let max = field.iter().fold(0.0f64, |m, &v| m.max(v));
        values.push(field);
        maxima.push(max);
    }
    Ok(MartyScan {
        schedule: schedule.to_vec(),
        points,
        values,
        maxima,
    })
}
