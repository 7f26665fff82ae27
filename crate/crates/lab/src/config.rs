//! JSON function configs.
//!
//! A config names one function and one rescaling exponent:
//!
//! ```json
//! {
//!   "kind": "exp_rational",
//!   "alpha": 0.5,
//!   "rational": { "scalar": [1.0, 0.0], "zeros": [{ "point": [0.0, 0.0], "mult": 1 }] },
//!   "polynomial": { "leading": [1.0, 0.0], "roots": [{ "point": [0.0, 0.0], "mult": 3 }] }
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs throughout. For `kind =
//! "exp_rational"` the `polynomial` block is the exponent and the optional
//! `rational` block is the meromorphic factor (default 1).

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::Deserialize;
use std::fs;
use std::path::Path;
use zalcman_core::model::{ExpRationalSpec, PolynomialSpec, RationalSpec};
use zalcman_core::FuncSpec;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionConfig {
    pub kind: String,
    pub alpha: f64,
    #[serde(default)]
    pub polynomial: Option<PolyConfig>,
    #[serde(default)]
    pub rational: Option<RationalConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyConfig {
    #[serde(default)]
    pub leading: Option<[f64; 2]>,
    #[serde(default)]
    pub roots: Option<Vec<RootConfig>>,
    #[serde(default)]
    pub coefficients: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootConfig {
    pub point: [f64; 2],
    pub mult: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalConfig {
    pub scalar: [f64; 2],
    #[serde(default)]
    pub zeros: Vec<RootConfig>,
    #[serde(default)]
    pub poles: Vec<RootConfig>,
}

fn cx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn points(roots: &[RootConfig]) -> Vec<(Complex64, u32)> {
    roots.iter().map(|r| (cx(r.point), r.mult)).collect()
}

impl PolyConfig {
    fn build(&self, field: &str) -> Result<PolynomialSpec> {
        match (&self.coefficients, &self.leading, &self.roots) {
            (Some(coeffs), None, None) => {
                let coeffs: Vec<Complex64> = coeffs.iter().map(|&v| cx(v)).collect();
                PolynomialSpec::from_coefficients(&coeffs)
                    .map_err(|e| anyhow::anyhow!("{field}.coefficients: {e}"))
            }
            (None, Some(leading), roots) => {
                let roots = points(roots.as_deref().unwrap_or(&[]));
                PolynomialSpec::from_roots(cx(*leading), &roots)
                    .map_err(|e| anyhow::anyhow!("{field}: {e}"))
            }
            (Some(_), _, _) => {
                bail!("{field}: give either coefficients or leading+roots, not both")
            }
            (None, None, _) => bail!("{field}: missing leading coefficient"),
        }
    }
}

impl RationalConfig {
    fn build(&self, field: &str) -> Result<RationalSpec> {
        RationalSpec::new(cx(self.scalar), &points(&self.zeros), &points(&self.poles))
            .map_err(|e| anyhow::anyhow!("{field}: {e}"))
    }
}

impl FunctionConfig {
    pub fn build(&self) -> Result<(FuncSpec, f64)> {
        if !(self.alpha > -1.0 && self.alpha < 1.0) {
            bail!("alpha out of range (-1,1)");
        }
        let f = match self.kind.as_str() {
            "polynomial" => {
                if self.rational.is_some() {
                    bail!("kind \"polynomial\" takes no rational block");
                }
                let p = self
                    .polynomial
                    .as_ref()
                    .context("kind \"polynomial\" needs a polynomial block")?
                    .build("polynomial")?;
                FuncSpec::Polynomial(p)
            }
            "rational" => {
                if self.polynomial.is_some() {
                    bail!("kind \"rational\" takes no polynomial block");
                }
                let r = self
                    .rational
                    .as_ref()
                    .context("kind \"rational\" needs a rational block")?
                    .build("rational")?;
                FuncSpec::Rational(r)
            }
            "exp_rational" => {
                let p = self
                    .polynomial
                    .as_ref()
                    .context("kind \"exp_rational\" needs a polynomial block (the exponent)")?
                    .build("polynomial")?;
                let r = match &self.rational {
                    Some(r) => r.build("rational")?,
                    None => RationalSpec::one(),
                };
                FuncSpec::ExpRational(ExpRationalSpec::new(r, p))
            }
            other => bail!("unknown kind {other:?} (expected polynomial, rational, exp_rational)"),
        };
        Ok((f, self.alpha))
    }
}

/// Read and build a config file.
pub fn load(path: &Path) -> Result<(FuncSpec, f64)> {
    let text = fs::read_to_string(path).with_context(|| format!("read {}", path.display()))?;
    let config: FunctionConfig =
        serde_json::from_str(&text).with_context(|| format!("parse {}", path.display()))?;
    config.build()
}
