//! Rays along which the rescaled family degenerates.
//!
//! For `f = R · e^P` with `deg P = k` and leading coefficient `a_k`, the
//! modulus of `f(nz)` along the ray `arg z = θ` is driven by
//! `Re(a_k n^k z^k) = |a_k| n^k |z|^k cos(arg a_k + kθ)`. Where the cosine is
//! nonzero the family runs off to `0` or `∞` locally uniformly; where it
//! vanishes the exponential stops dominating and the rescaled spherical
//! derivative is unbounded. Those transition rays,
//! `arg a_k + kθ ≡ ±π/2 (mod 2π)`, are the interesting locus: limit
//! functions with nontrivial structure live on or next to them.
//!
//! Polynomials and rationals have no exponential factor and hence no
//! transition rays; their ray set is empty.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::kernel::{circular_distance, normalize_angle};
use crate::model::FuncSpec;

/// Default angular tolerance for deciding "on the ray".
pub const ANGLE_TOL: f64 = 1e-9;

/// A finite set of ray angles in `[0, 2π)`, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RaySet {
    angles: Vec<f64>,
}

impl RaySet {
    fn from_angles(mut angles: Vec<f64>) -> Self {
        for a in &mut angles {
            *a = normalize_angle(*a);
        }
        angles.sort_unstable_by(f64::total_cmp);
        RaySet { angles }
    }

    pub fn empty() -> Self {
        RaySet { angles: Vec::new() }
    }

    /// The angles, ascending in `[0, 2π)`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Circular distance from `theta` to the nearest ray; `None` when empty.
    pub fn nearest_distance(&self, theta: f64) -> Option<f64> {
        self.angles
            .iter()
            .map(|&a| circular_distance(a, theta))
            .min_by(f64::total_cmp)
    }

    /// Whether `theta` lies within `tol` (circularly) of some ray.
    pub fn contains(&self, theta: f64, tol: f64) -> bool {
        self.nearest_distance(theta).is_some_and(|d| d <= tol)
    }
}

/// The transition rays of the rescaled family of `f`.
///
/// Empty for polynomials and rationals. For `f = R · e^P` with
/// `P = a_k z^k + …`, the `2k` distinct solutions of
/// `arg a_k + kθ ≡ ±π/2 (mod 2π)` in `[0, 2π)`.
pub fn nonnormal_rays(f: &FuncSpec) -> RaySet {
    let exponent = match f.exponent() {
        Some(p) => p,
        None => return RaySet::empty(),
    };
    let k = exponent.degree();
    let phase = exponent.leading().arg();
    let kf = k as f64;
    let mut angles = Vec::with_capacity(2 * k as usize);
    for l in 0..k {
        let offset = core::f64::consts::TAU * (l as f64) / kf;
        angles.push((FRAC_PI_2 - phase) / kf + offset);
        angles.push((-FRAC_PI_2 - phase) / kf + offset);
    }
    RaySet::from_angles(angles)
}

/// Whether the rescaled family of `f` degenerates at direction `theta`,
/// within [`ANGLE_TOL`].
pub fn is_nonnormal_at(f: &FuncSpec, theta: f64) -> bool {
    nonnormal_rays(f).contains(theta, ANGLE_TOL)
}
