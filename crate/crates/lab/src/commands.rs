//! The six subcommands. Each returns the process exit code: 0 for success,
//! 1 for a verification or numeric failure (after printing a reason line),
//! while config and usage problems bubble up as errors and exit 2.

use std::path::Path;

use anyhow::{anyhow, bail, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use zalcman_core::classify::{classify, dual, ArgSet, FamilyDescriptor};
use zalcman_core::construct::{
    ray_pinned_direction, recipe_exp_interior, recipe_exp_ray_pinned, recipe_monome,
    ConstructError, RecipeKind, RescalingRecipe, Z0Mode,
};
use zalcman_core::kernel::{chordal, LogComplex};
use zalcman_core::locus::nonnormal_rays;
use zalcman_core::model::{PolynomialSpec, RationalSpec};
use zalcman_core::verify::{marty_scan, verify_convergence, GridSpec, VerifyError, VerifyMode};
use zalcman_core::FuncSpec;

use crate::config;
use crate::descriptor_json;
use crate::planner::{
    self, default_schedule, describe_instance, kind_label, parse_complex_pair, parse_params,
    parse_schedule, parse_target, ExpMode, Plan,
};
use crate::report::{fmt9, json9, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConstructModeArg {
    Faithful,
    Pinned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyModeArg {
    Full,
    Subsequence,
}

pub fn cmd_classify(config_path: &Path, format: Format) -> Result<i32> {
    let (f, alpha) = config::load(config_path)?;
    let set = classify(&f, alpha).map_err(|e| anyhow!("{e}"))?;
    match format {
        Format::Json => {
            let doc = descriptor_json::set_to_json(&set);
            println!("{}", serde_json::to_string_pretty(&doc).expect("plain JSON"));
        }
        Format::Text => {
            for d in set.iter() {
                println!("{}", descriptor_text(d));
            }
        }
    }
    Ok(0)
}

fn descriptor_text(d: &FamilyDescriptor) -> String {
    match d {
        FamilyDescriptor::Power {
            arg_total,
            exponent,
            pinned_coeff,
        } => {
            let coeff = match pinned_coeff {
                Some(c) => format!("[{},{}]", fmt9(c.re), fmt9(c.im)),
                None => "free".into(),
            };
            format!(
                "power: exponent={exponent} arg_total={} pinned_coeff={coeff}",
                fmt9(*arg_total)
            )
        }
        FamilyDescriptor::ScaledAffine { scale, exponent } => format!(
            "scaled_affine: exponent={exponent} scale=[{},{}]",
            fmt9(scale.re),
            fmt9(scale.im)
        ),
        FamilyDescriptor::Exp { args } => format!("exp: args={}", arg_set_text(args)),
        FamilyDescriptor::Precomposition { .. } => "precomposition".into(),
    }
}

fn arg_set_text(args: &ArgSet) -> String {
    match args {
        ArgSet::Single(v) => format!("single({})", fmt9(*v)),
        ArgSet::Finite(vs) => {
            let vs: Vec<String> = vs.iter().map(|&v| fmt9(v)).collect();
            format!("finite({})", vs.join(", "))
        }
        ArgSet::Arcs(arcs) => {
            let arcs: Vec<String> = arcs
                .iter()
                .map(|a| format!("[{},{}]", fmt9(a.lo()), fmt9(a.length())))
                .collect();
            format!("arcs({})", arcs.join(", "))
        }
        ArgSet::AllNonzero => "all_nonzero".into(),
    }
}

pub fn cmd_rays(config_path: &Path, format: Format) -> Result<i32> {
    let (f, _) = config::load(config_path)?;
    let rays = nonnormal_rays(&f);
    match format {
        Format::Text => {
            if rays.is_empty() {
                println!("none");
            } else {
                let angles: Vec<String> =
                    rays.angles().iter().map(|a| format!("{a:.6}")).collect();
                println!("{}", angles.join(", "));
            }
        }
        Format::Json => {
            let doc: Vec<serde_json::Value> =
                rays.angles().iter().map(|&a| json9(a)).collect();
            println!(
                "{}",
                serde_json::to_string(&serde_json::Value::Array(doc)).expect("plain JSON")
            );
        }
    }
    Ok(0)
}

/// Recipes whose generators carry extra per-`n` diagnostics.
enum Diagnostics {
    Plain,
    Interior,
    Pinned,
}

fn diagnostics_for(kind: &RecipeKind) -> Diagnostics {
    match kind {
        RecipeKind::ExpInterior => Diagnostics::Interior,
        RecipeKind::ExpRayPinned => Diagnostics::Pinned,
        RecipeKind::Dual(inner) => diagnostics_for(inner),
        _ => Diagnostics::Plain,
    }
}

fn numeric_failure(e: &ConstructError) -> bool {
    matches!(
        e,
        ConstructError::NewtonDivergence { .. } | ConstructError::NoRoot { .. }
    )
}

pub fn cmd_construct(
    config_path: &Path,
    target: &str,
    params: &str,
    mode: ConstructModeArg,
) -> Result<i32> {
    let (f, alpha) = config::load(config_path)?;
    let (family, mut kv) = parse_target(target)?;
    for (key, value) in parse_params(params)? {
        if kv.insert(key.clone(), value).is_some() {
            bail!("parameter {key:?} given in both --target and --params");
        }
    }
    let mode = match mode {
        ConstructModeArg::Faithful => ExpMode::Faithful,
        ConstructModeArg::Pinned => ExpMode::Pinned,
    };
    let Plan { recipe, g } = planner::plan(&f, alpha, &family, &kv, Some(mode))?;

    let exact = match recipe.exactness() {
        zalcman_core::construct::Exactness::ExactForAllN => "exact",
        zalcman_core::construct::Exactness::LimitOnly => "limit-only",
    };
    println!("{CSV_HEADER}");
    println!(
        "# construct recipe={} exactness={exact}",
        kind_label(recipe.kind())
    );
    println!("# target {}", describe_instance(&g));

    let schedule: Vec<u64> = vec![10, 100, 1_000, 10_000, 100_000];
    match print_sequence(&recipe, &schedule) {
        Ok(()) => Ok(0),
        Err(e) if numeric_failure(&e) => {
            println!("# reason: {e}");
            Ok(1)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

fn print_sequence(recipe: &RescalingRecipe, schedule: &[u64]) -> Result<(), ConstructError> {
    match diagnostics_for(recipe.kind()) {
        Diagnostics::Plain => {
            println!("n,k_n,z_re,z_im,rho_n");
            for &n in schedule {
                let pt = recipe.eval(n)?;
                println!(
                    "{n},{},{},{},{}",
                    pt.k_n,
                    fmt9(pt.z_n.re),
                    fmt9(pt.z_n.im),
                    fmt9(pt.rho_n)
                );
            }
        }
        Diagnostics::Interior => {
            let state = recipe.interior_state(schedule)?;
            println!("# theta0={} c0={}", fmt9(state.theta0), fmt9(state.c0));
            println!("n,k_n,z_re,z_im,rho_n,t_n,residual");
            for row in &state.rows {
                let pt = recipe.eval(row.n)?;
                println!(
                    "{},{},{},{},{},{},{}",
                    row.n,
                    pt.k_n,
                    fmt9(pt.z_n.re),
                    fmt9(pt.z_n.im),
                    fmt9(pt.rho_n),
                    fmt9(row.t_n),
                    fmt9(row.residual)
                );
            }
        }
        Diagnostics::Pinned => {
            println!("n,k_n,z_re,z_im,rho_n,w_re,w_im,residual,iterations,branch");
            for &n in schedule {
                let pt = recipe.eval(n)?;
                let info = recipe.ray_solve(n)?;
                println!(
                    "{n},{},{},{},{},{},{},{},{},{}",
                    pt.k_n,
                    fmt9(pt.z_n.re),
                    fmt9(pt.z_n.im),
                    fmt9(pt.rho_n),
                    fmt9(info.w.re),
                    fmt9(info.w.im),
                    fmt9(info.residual),
                    info.iterations,
                    info.branch
                );
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    config_path: &Path,
    target: &str,
    n_schedule: Option<&str>,
    grid_radius: f64,
    grid_n: u32,
    tol: Option<f64>,
    mode: VerifyModeArg,
) -> Result<i32> {
    let (f, alpha) = config::load(config_path)?;
    let (family, kv) = parse_target(target)?;
    let Plan { recipe, g } = planner::plan(&f, alpha, &family, &kv, None)?;

    let schedule = match n_schedule {
        Some(s) => parse_schedule(s)?,
        None => default_schedule(),
    };
    let grid = GridSpec::new(grid_radius, grid_n, 0.05).map_err(|e| anyhow!("{e}"))?;
    let tolerance = tol.unwrap_or(match recipe.exactness() {
        zalcman_core::construct::Exactness::ExactForAllN => 1e-9,
        zalcman_core::construct::Exactness::LimitOnly => 1e-2,
    });
    let vmode = match mode {
        VerifyModeArg::Full => VerifyMode::Full,
        VerifyModeArg::Subsequence => VerifyMode::Subsequence,
    };

    println!("{CSV_HEADER}");
    println!(
        "# verify recipe={} mode={} tolerance={}",
        kind_label(recipe.kind()),
        match vmode {
            VerifyMode::Full => "full",
            VerifyMode::Subsequence => "subsequence",
        },
        fmt9(tolerance)
    );
    println!("# target {}", describe_instance(&g));

    let report = match verify_convergence(&f, alpha, &recipe, &g, &grid, &schedule, tolerance, vmode)
    {
        Ok(report) => report,
        Err(VerifyError::EmptySubsequence) => {
            println!("# verdict: FAIL");
            println!("# reason: no coherent phase subsequence");
            return Ok(1);
        }
        Err(VerifyError::Recipe(e)) if numeric_failure(&e) => {
            println!("# verdict: FAIL");
            println!("# reason: {e}");
            return Ok(1);
        }
        Err(e) => return Err(anyhow!("{e}")),
    };

    println!("# rotation={}", fmt9(report.rotation));
    println!("n,sup_error,phase_dispersion,selected_flag");
    for (i, &n) in report.schedule.iter().enumerate() {
        println!(
            "{n},{},{},{}",
            fmt9(report.sup_error[i]),
            fmt9(report.phase_dispersion[i]),
            u8::from(report.selected[i])
        );
    }

    if report.verdict {
        println!("# verdict: PASS");
        Ok(0)
    } else {
        println!("# verdict: FAIL");
        println!("# reason: {}", failure_reason(&report, tolerance));
        Ok(1)
    }
}

fn failure_reason(report: &zalcman_core::ConvergenceReport, tolerance: f64) -> &'static str {
    let selected: Vec<f64> = report
        .sup_error
        .iter()
        .zip(&report.selected)
        .filter_map(|(&e, &s)| s.then_some(e))
        .collect();
    match (selected.first(), selected.last()) {
        (Some(&first), Some(&last)) if last >= tolerance && last > 0.5 * first => {
            "non-decreasing error"
        }
        _ => "error above tolerance",
    }
}

pub fn cmd_scan(
    config_path: &Path,
    center: &str,
    radius: f64,
    nmax: u64,
    points: u32,
) -> Result<i32> {
    let (f, _) = config::load(config_path)?;
    let center = parse_complex_pair(center)?;
    if nmax < 1 {
        bail!("nmax must be at least 1");
    }
    let mut schedule = Vec::new();
    let mut n = 1u64;
    while n <= nmax {
        schedule.push(n);
        n = n.saturating_mul(10);
    }
    if *schedule.last().expect("nonempty") != nmax {
        schedule.push(nmax);
    }

    let scans: Result<Vec<_>, VerifyError> = schedule
        .par_iter()
        .map(|&n| marty_scan(&f, center, radius, points, &[n]))
        .collect();
    let scans = scans.map_err(|e| anyhow!("{e}"))?;

    println!("{CSV_HEADER}");
    println!(
        "# scan center=[{},{}] radius={} nmax={nmax}",
        fmt9(center.re),
        fmt9(center.im),
        fmt9(radius)
    );
    println!("z_re,z_im,n,marty_value");
    for (scan, &n) in scans.iter().zip(&schedule) {
        for (z, v) in scan.points.iter().zip(&scan.values[0]) {
            println!("{},{},{n},{}", fmt9(z.re), fmt9(z.im), fmt9(*v));
        }
    }
    Ok(0)
}

pub fn cmd_selftest() -> Result<i32> {
    let suites: Vec<(&str, fn() -> Result<()>)> = vec![
        ("chordal identities", suite_chordal),
        ("monome exactness", suite_monome),
        ("ray spacing", suite_rays),
        ("classification duality", suite_duality),
        ("interior pinning", suite_interior),
        ("pinned exactness", suite_pinned),
    ];
    let mut failures = 0;
    for (name, suite) in suites {
        match suite() {
            Ok(()) => println!("suite {name}: PASS"),
            Err(e) => {
                println!("suite {name}: FAIL ({e})");
                failures += 1;
            }
        }
    }
    if failures == 0 {
        println!("selftest: PASS");
        Ok(0)
    } else {
        println!("selftest: FAIL");
        println!("# reason: {failures} suite(s) failed");
        Ok(1)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn exp_poly(k: u32) -> Result<FuncSpec> {
    let p = PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(0.0, 0.0), k)])
        .map_err(|e| anyhow!("{e}"))?;
    FuncSpec::exp_rational(RationalSpec::one(), p).map_err(|e| anyhow!("{e}"))
}

fn suite_chordal() -> Result<()> {
    let zero = LogComplex::zero();
    let inf = LogComplex::infinity();
    if chordal(&zero, &inf) != 1.0 {
        bail!("chordal(0, inf) != 1");
    }
    let pairs = [
        (c(1.0, 2.0), c(3.0, -1.0)),
        (c(0.5, 0.0), c(-0.25, 1.0)),
        (c(-3.0, 4.0), c(1e-8, 1.0)),
        (c(2e7, -5.0), c(-1e-6, 3e3)),
    ];
    for (wa, wb) in pairs {
        let a = LogComplex::from_cartesian(wa);
        let b = LogComplex::from_cartesian(wb);
        if chordal(&a, &b) != chordal(&b, &a) {
            bail!("chordal not symmetric at ({wa}, {wb})");
        }
        let drift = (chordal(&a.recip(), &b.recip()) - chordal(&a, &b)).abs();
        if drift >= 1e-12 {
            bail!("inversion invariance drift {drift} at ({wa}, {wb})");
        }
    }
    Ok(())
}

fn suite_monome() -> Result<()> {
    let grid = GridSpec::default();
    let schedule = [10u64, 1_000, 1_000_000];
    for k in 1..=3u32 {
        let p = PolynomialSpec::from_roots(c(1.0, 0.0), &[(c(3.0, 0.0), k)])
            .map_err(|e| anyhow!("{e}"))?;
        let f = FuncSpec::Polynomial(p);
        for alpha in [-0.5, 0.0, 0.5] {
            let recipe = recipe_monome(k, c(3.0, 0.0), alpha, 2.0, c(1.0, 1.0))
                .map_err(|e| anyhow!("{e}"))?;
            let report = verify_convergence(
                &f,
                alpha,
                &recipe,
                recipe.target(),
                &grid,
                &schedule,
                1e-9,
                VerifyMode::Full,
            )
            .map_err(|e| anyhow!("{e}"))?;
            if !report.verdict {
                bail!("monome k={k} alpha={alpha} exceeded 1e-9");
            }
        }
    }
    Ok(())
}

fn suite_rays() -> Result<()> {
    for k in 1..=6u32 {
        let f = exp_poly(k)?;
        let rays = nonnormal_rays(&f);
        if rays.len() != 2 * k as usize {
            bail!("expected {} rays for degree {k}, got {}", 2 * k, rays.len());
        }
        let angles = rays.angles();
        let want = core::f64::consts::PI / k as f64;
        for pair in angles.windows(2) {
            if (pair[1] - pair[0] - want).abs() >= 1e-12 {
                bail!("ray spacing off at degree {k}");
            }
        }
    }
    Ok(())
}

fn suite_duality() -> Result<()> {
    let z_over = FuncSpec::Rational(
        RationalSpec::new(c(1.0, 0.0), &[(c(0.0, 0.0), 1)], &[(c(2.0, 0.0), 1)])
            .map_err(|e| anyhow!("{e}"))?,
    );
    let inv_square = FuncSpec::Rational(
        RationalSpec::new(c(1.0, 0.0), &[], &[(c(0.0, 0.0), 2)]).map_err(|e| anyhow!("{e}"))?,
    );
    let battery = [exp_poly(1)?, exp_poly(2)?, exp_poly(3)?, z_over, inv_square];
    for f in &battery {
        let forward = classify(f, 0.5).map_err(|e| anyhow!("{e}"))?;
        let mirrored = classify(&f.reciprocal(), -0.5).map_err(|e| anyhow!("{e}"))?;
        if !mirrored.set_eq(&dual(&forward), 1e-9) {
            bail!("duality mismatch");
        }
    }
    Ok(())
}

fn suite_interior() -> Result<()> {
    let FuncSpec::ExpRational(e) = exp_poly(2)? else {
        bail!("wrong shape")
    };
    let recipe = recipe_exp_interior(&e, 0.5, core::f64::consts::FRAC_PI_2)
        .map_err(|err| anyhow!("{err}"))?;
    let state = recipe
        .interior_state(&[1_000, 10_000])
        .map_err(|err| anyhow!("{err}"))?;
    for row in &state.rows {
        if row.residual >= 1e-10 {
            bail!("pinning residual {} at n={}", row.residual, row.n);
        }
    }
    Ok(())
}

fn suite_pinned() -> Result<()> {
    let FuncSpec::ExpRational(e) = exp_poly(1)? else {
        bail!("wrong shape")
    };
    let (_, arg_a1) = ray_pinned_direction(&e, 0).map_err(|err| anyhow!("{err}"))?;
    let a1 = Complex64::from_polar(1.0, arg_a1);
    let recipe = recipe_exp_ray_pinned(&e, 0.0, Z0Mode::Shrinking, 0, a1, c(0.0, 0.0))
        .map_err(|err| anyhow!("{err}"))?;
    let report = verify_convergence(
        &FuncSpec::ExpRational(e),
        0.0,
        &recipe,
        recipe.target(),
        &GridSpec::default(),
        &[10, 100, 1_000],
        1e-12,
        VerifyMode::Full,
    )
    .map_err(|err| anyhow!("{err}"))?;
    if !report.verdict {
        bail!("pinned linear exponential not exact");
    }
    Ok(())
}
