//! Scalar root bracketing and the damped Newton solve for phase-pinned
//! congruences.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::TAU;
use num_complex::Complex64;

/// Result of a bracketed scalar solve.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BracketRoot {
    pub root: f64,
    pub residual: f64,
}

/// The bracket carried no sign change; endpoint values are reported so the
/// caller can surface them.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NoSignChange {
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Brent's method on `[a, b]`. Requires a sign change across the bracket;
/// returns the root and the function value there.
pub(crate) fn brent_root<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    xtol: f64,
    max_iter: u32,
) -> Result<BracketRoot, NoSignChange> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(BracketRoot { root: a, residual: 0.0 });
    }
    if fb == 0.0 {
        return Ok(BracketRoot { root: b, residual: 0.0 });
    }
    if fa.signum() == fb.signum() {
        return Err(NoSignChange { f_lo: fa, f_hi: fb });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(BracketRoot { root: b, residual: fb });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, falling back to secant.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
    }
    Ok(BracketRoot { root: b, residual: fb })
}

/// Converged (or best-effort) state of the congruence Newton iteration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CongruenceSolve {
    pub w: Complex64,
    pub residual: f64,
    pub iterations: u32,
    pub branch: i64,
}

/// Damped Newton solve of `g(w) ≡ rhs (mod 2πi)`.
///
/// The integer branch is re-selected as the nearest `2πi` multiple on every
/// iteration and frozen once the residual first drops below `tol`, so late
/// polish steps cannot chatter between branches. Returns `Err` with the
/// best iterate when the tolerance is never met.
pub(crate) fn newton_congruence<G, D>(
    g: G,
    dg: D,
    w0: Complex64,
    rhs: Complex64,
    damping: f64,
    max_iter: u32,
    tol: f64,
) -> Result<CongruenceSolve, CongruenceSolve>
where
    G: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    let mut w = w0;
    let mut branch: i64 = 0;
    let mut frozen = false;
    let mut best = CongruenceSolve {
        w,
        residual: f64::INFINITY,
        iterations: 0,
        branch,
    };
    for it in 0..max_iter {
        let v = g(w) - rhs;
        if !frozen {
            branch = libm_round(v.im / TAU);
        }
        let h = v - Complex64::new(0.0, TAU * branch as f64);
        let res = h.norm();
        if res < best.residual {
            best = CongruenceSolve {
                w,
                residual: res,
                iterations: it,
                branch,
            };
        }
        if res < tol {
            frozen = true;
        }
        // Stop at the rounding floor of the congruence terms.
        let scale = v.norm() + (TAU * branch as f64).abs() + 1.0;
        if res <= scale * 1e-15 {
            break;
        }
        let der = dg(w);
        if der.norm() == 0.0 {
            break;
        }
        let step = h / der;
        w -= step * damping;
        if step.norm() <= w.norm() * 1e-16 {
            break;
        }
    }
    if best.residual <= tol {
        Ok(best)
    } else {
        Err(best)
    }
}

#[inline]
fn libm_round(x: f64) -> i64 {
    Float::round(x) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_a_quadratic_root() {
        let r = brent_root(|t| t * t - 2.0, 1.0, 2.0, 1e-14, 200).unwrap();
        assert!((r.root - 2.0f64.sqrt()).abs() < 1e-13);
        assert!(r.residual.abs() < 1e-11);
    }

    #[test]
    fn brent_rejects_signless_bracket() {
        let e = brent_root(|t| t * t + 1.0, -1.0, 1.0, 1e-14, 200).unwrap_err();
        assert_eq!(e.f_lo, 2.0);
        assert_eq!(e.f_hi, 2.0);
    }

    #[test]
    fn newton_solves_linear_congruence() {
        // w ≡ 1 (mod 2πi) with a start near 3 turns up the axis.
        let got = newton_congruence(
            |w| w,
            |_| Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 19.0),
            Complex64::new(1.0, 0.0),
            0.5,
            100,
            1e-10,
        )
        .unwrap();
        assert_eq!(got.branch, 3);
        let expect = Complex64::new(1.0, 3.0 * TAU);
        assert!((got.w - expect).norm() < 1e-12);
    }

    #[test]
    fn newton_reports_best_iterate_on_failure() {
        // Derivative vanishes at the start: no progress possible.
        let err = newton_congruence(
            |w| w * w,
            |w| 2.0 * w,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            0.5,
            10,
            1e-10,
        )
        .unwrap_err();
        assert!(err.residual >= 1.0 - 1e-12);
    }
}
