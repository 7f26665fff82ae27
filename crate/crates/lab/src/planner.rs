//! Target parsing and recipe planning shared by `construct` and `verify`.
//!
//! A target is a family name with optional comma-separated parameters:
//!
//! ```text
//! power                 affine recipe at a zero/pole (keys: center, a, c_re, c_im)
//! precomp               alpha = 0 affine precomposition (keys: b_re, b_im, scale)
//! exp                   exponential family (keys: theta0 | ray, a1_mod, a1_arg,
//!                       a0_re, a0_im, r0)
//! ```
//!
//! e.g. `exp,ray=0,a1_mod=1` or `power,center=1,a=2`. Every family also
//! takes `perturb_arg=<radians>`, which rotates the *claimed* limit's
//! leading coefficient while leaving the recipe alone — the knob for
//! negative controls that must fail numerically rather than structurally.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use zalcman_core::classify::FamilyInstance;
use zalcman_core::construct::{
    ray_pinned_direction, recipe_dual, recipe_exp_interior, recipe_exp_power,
    recipe_exp_precomp, recipe_exp_ray_pinned, recipe_polynomial, recipe_rational,
    recipe_rational_alpha0, RecipeKind, RescalingRecipe, Z0Mode,
};
use zalcman_core::FuncSpec;

use crate::report::fmt9;

/// How `construct --mode` steers exponential recipes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpMode {
    /// Prefer the slow-drift interior construction when one exists.
    Faithful,
    /// Force the ray-pinned construction.
    Pinned,
}

pub struct Plan {
    pub recipe: RescalingRecipe,
    /// The limit the run claims — the recipe's own target unless perturbed.
    pub g: FamilyInstance,
}

/// Parse `family,key=value,...`.
pub fn parse_target(s: &str) -> Result<(String, BTreeMap<String, String>)> {
    let mut parts = s.split(',');
    let family = parts.next().unwrap_or("").trim().to_string();
    if family.is_empty() {
        bail!("empty target");
    }
    let mut kv = BTreeMap::new();
    for part in parts {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .with_context(|| format!("target parameter {part:?} is not key=value"))?;
        if kv.insert(key.trim().to_string(), value.trim().to_string()).is_some() {
            bail!("duplicate target parameter {key:?}");
        }
    }
    Ok((family, kv))
}

/// Parse a bare `key=value,...` list (the `--params` flag).
pub fn parse_params(s: &str) -> Result<BTreeMap<String, String>> {
    if s.trim().is_empty() {
        return Ok(BTreeMap::new());
    }
    let (_, kv) = parse_target(&format!("_,{s}"))?;
    Ok(kv)
}

/// Comma-separated schedule of `n` values.
pub fn parse_schedule(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<u64>()
                .with_context(|| format!("schedule entry {p:?} is not an integer"))
        })
        .collect()
}

/// `re,im` pair.
pub fn parse_complex_pair(s: &str) -> Result<Complex64> {
    let (re, im) = s
        .split_once(',')
        .with_context(|| format!("expected re,im — got {s:?}"))?;
    Ok(Complex64::new(
        re.trim().parse().with_context(|| format!("bad real part {re:?}"))?,
        im.trim().parse().with_context(|| format!("bad imaginary part {im:?}"))?,
    ))
}

pub fn default_schedule() -> Vec<u64> {
    vec![10, 100, 1_000, 10_000, 100_000, 1_000_000]
}

struct Params<'a> {
    kv: &'a BTreeMap<String, String>,
}

impl Params<'_> {
    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for key in self.kv.keys() {
            if !allowed.contains(&key.as_str()) {
                bail!("unknown target parameter {key:?} (allowed: {})", allowed.join(", "));
            }
        }
        Ok(())
    }

    fn f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.kv.get(key) {
            None => Ok(default),
            Some(v) => v.parse().with_context(|| format!("{key}={v:?} is not a number")),
        }
    }

    fn f64_opt(&self, key: &str) -> Result<Option<f64>> {
        match self.kv.get(key) {
            None => Ok(None),
            Some(v) => Ok(Some(
                v.parse().with_context(|| format!("{key}={v:?} is not a number"))?,
            )),
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.kv.get(key) {
            None => Ok(default),
            Some(v) => v.parse().with_context(|| format!("{key}={v:?} is not an index")),
        }
    }

    fn has(&self, key: &str) -> bool {
        self.kv.contains_key(key)
    }
}

/// Build the recipe and claimed limit for a parsed target.
pub fn plan(
    f: &FuncSpec,
    alpha: f64,
    family: &str,
    kv: &BTreeMap<String, String>,
    mode: Option<ExpMode>,
) -> Result<Plan> {
    let params = Params { kv };
    let recipe = match family {
        "power" => plan_power(f, alpha, &params)?,
        "precomp" => plan_precomp(f, alpha, &params)?,
        "exp" => plan_exp(f, alpha, &params, mode)?,
        other => bail!("unknown target family {other:?} (expected power, precomp, exp)"),
    };
    let g = perturbed(recipe.target(), params.f64("perturb_arg", 0.0)?)?;
    Ok(Plan { recipe, g })
}

fn plan_power(f: &FuncSpec, alpha: f64, params: &Params) -> Result<RescalingRecipe> {
    params.check_keys(&["center", "a", "c_re", "c_im", "perturb_arg"])?;
    let a = params.f64("a", 1.0)?;
    let c = Complex64::new(params.f64("c_re", 0.0)?, params.f64("c_im", 0.0)?);
    let center = if params.has("center") {
        Some(params.usize("center", 0)?)
    } else {
        None
    };
    let recipe = match f {
        FuncSpec::Polynomial(p) => recipe_polynomial(p, alpha, a, c, center)?,
        FuncSpec::Rational(r) => {
            if alpha == 0.0 {
                recipe_rational_alpha0(r, c, a)?
            } else {
                recipe_rational(r, alpha, a, c, center)?
            }
        }
        FuncSpec::ExpRational(e) => recipe_exp_power(e, alpha, a, c, center)?,
    };
    Ok(recipe)
}

fn plan_precomp(f: &FuncSpec, alpha: f64, params: &Params) -> Result<RescalingRecipe> {
    params.check_keys(&["b_re", "b_im", "scale", "perturb_arg"])?;
    if alpha != 0.0 {
        bail!("precomposition recipes require alpha = 0 (got {alpha})");
    }
    let b = Complex64::new(params.f64("b_re", 0.0)?, params.f64("b_im", 0.0)?);
    let scale = params.f64("scale", 1.0)?;
    let recipe = match f {
        FuncSpec::Polynomial(p) => recipe_polynomial(p, 0.0, scale, b, None)?,
        FuncSpec::Rational(r) => recipe_rational_alpha0(r, b, scale)?,
        FuncSpec::ExpRational(e) => recipe_exp_precomp(e, b, scale)?,
    };
    Ok(recipe)
}

fn plan_exp(
    f: &FuncSpec,
    alpha: f64,
    params: &Params,
    mode: Option<ExpMode>,
) -> Result<RescalingRecipe> {
    params.check_keys(&[
        "theta0", "ray", "a1_mod", "a1_arg", "a0_re", "a0_im", "r0", "perturb_arg",
    ])?;
    let FuncSpec::ExpRational(e) = f else {
        bail!("exp targets need an exp_rational function");
    };
    let k = e.exponent().degree();

    let pinned_keys = ["ray", "a1_mod", "a1_arg", "a0_re", "a0_im", "r0"];
    let wants_pinned = pinned_keys.iter().any(|k| params.has(k));
    if params.has("theta0") && wants_pinned {
        bail!("theta0 selects the interior recipe; drop the ray-pinned parameters");
    }
    let interior = match mode {
        _ if params.has("theta0") => true,
        _ if wants_pinned => false,
        Some(ExpMode::Pinned) => false,
        Some(ExpMode::Faithful) | None => alpha != 0.0 && k >= 2,
    };

    if interior {
        if alpha > 0.0 {
            let theta0 = match params.f64_opt("theta0")? {
                Some(t) => t,
                None => midwindow_direction(e.exponent().leading().arg(), k),
            };
            Ok(recipe_exp_interior(e, alpha, theta0)?)
        } else if alpha < 0.0 {
            let recip = zalcman_core::model::ExpRationalSpec::new(
                e.rational().reciprocal(),
                e.exponent().negated(),
            );
            let theta0 = match params.f64_opt("theta0")? {
                Some(t) => t,
                None => midwindow_direction(recip.exponent().leading().arg(), k),
            };
            let inner = recipe_exp_interior(&recip, -alpha, theta0)?;
            Ok(recipe_dual(&inner))
        } else {
            bail!("interior recipes need alpha != 0; use the precomp target at alpha = 0");
        }
    } else {
        let ray = params.usize("ray", 0)?;
        let (_, forced_arg) = ray_pinned_direction(e, ray)?;
        let a1_mod = params.f64("a1_mod", 1.0)?;
        let a1_arg = params.f64("a1_arg", forced_arg)?;
        let a1 = Complex64::from_polar(a1_mod, a1_arg);
        let a0 = Complex64::new(params.f64("a0_re", 0.0)?, params.f64("a0_im", 0.0)?);
        let z0 = match params.kv.get("r0").map(String::as_str) {
            None | Some("shrink") => Z0Mode::Shrinking,
            Some(v) => {
                let r: f64 = v.parse().with_context(|| format!("r0={v:?} is not a radius"))?;
                Z0Mode::Fixed(r)
            }
        };
        Ok(recipe_exp_ray_pinned(e, alpha, z0, ray, a1, a0)?)
    }
}

/// Middle of the first admissible interior window: the direction where the
/// leading exponent term is most strongly decaying.
fn midwindow_direction(arg_ak: f64, k: u32) -> f64 {
    (core::f64::consts::PI - arg_ak) / k as f64
}

fn perturbed(g: &FamilyInstance, phi: f64) -> Result<FamilyInstance> {
    if phi == 0.0 {
        return Ok(g.clone());
    }
    let rot = Complex64::from_polar(1.0, phi);
    let out = match g {
        FamilyInstance::Exp { a1, a0 } => FamilyInstance::exp(a1 * rot, *a0),
        FamilyInstance::Power {
            coeff,
            a,
            b,
            exponent,
        } => FamilyInstance::power(coeff * rot, *a, *b, *exponent),
        FamilyInstance::Precomp { .. } => {
            bail!("perturb_arg does not apply to precomposition targets")
        }
    };
    out.map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn kind_label(kind: &RecipeKind) -> String {
    match kind {
        RecipeKind::Monome => "monome".into(),
        RecipeKind::PolyAlpha0 => "poly-affine".into(),
        RecipeKind::PolyPos => "poly-zero-centered".into(),
        RecipeKind::PolyNeg => "poly-scale".into(),
        RecipeKind::RationalAlpha0 => "rational-affine".into(),
        RecipeKind::ExpPrecomp => "exp-affine".into(),
        RecipeKind::ExpRayPinned => "exp-ray-pinned".into(),
        RecipeKind::ExpInterior => "exp-interior".into(),
        RecipeKind::Dual(inner) => format!("dual({})", kind_label(inner)),
        RecipeKind::Table => "table".into(),
    }
}

pub fn describe_instance(g: &FamilyInstance) -> String {
    match g {
        FamilyInstance::Power {
            coeff,
            a,
            b,
            exponent,
        } => format!(
            "power coeff=[{},{}] a={} b=[{},{}] exponent={exponent}",
            fmt9(coeff.re),
            fmt9(coeff.im),
            fmt9(*a),
            fmt9(b.re),
            fmt9(b.im),
        ),
        FamilyInstance::Exp { a1, a0 } => format!(
            "exp a1=[{},{}] a0=[{},{}]",
            fmt9(a1.re),
            fmt9(a1.im),
            fmt9(a0.re),
            fmt9(a0.im),
        ),
        FamilyInstance::Precomp { c1, c2, .. } => {
            format!("precomp c1=[{},{}] c2={}", fmt9(c1.re), fmt9(c1.im), fmt9(*c2))
        }
    }
}
