//! JSON rendering of classification results.
//!
//! A descriptor set serializes as an array, one object per family:
//!
//! ```json
//! [
//!   { "family": "power", "exponent": 1, "arg_total": 0.0, "pinned_coeff": [1.0, 0.0] },
//!   { "family": "scaled_affine", "exponent": 2, "scale": [3.0, 0.0] },
//!   { "family": "exp", "arg_set": { "kind": "arcs", "arcs": [[0.785398163, 1.570796327]] } },
//!   { "family": "precomposition" }
//! ]
//! ```
//!
//! Angles are radians in `[0, 2π)`; arcs are `[lo, length]` pairs. The
//! precomposition family carries no payload — its function is the config's
//! own, and both affine parameters are free. `parse` accepts exactly this
//! shape back, so emitted JSON can be validated by re-serialization.

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use zalcman_core::classify::{Arc, ArgSet, DescriptorSet, FamilyDescriptor};

use crate::report::{json9, json_pair};

pub fn set_to_json(set: &DescriptorSet) -> Value {
    Value::Array(set.iter().map(descriptor_to_json).collect())
}

fn descriptor_to_json(d: &FamilyDescriptor) -> Value {
    match d {
        FamilyDescriptor::Power {
            arg_total,
            exponent,
            pinned_coeff,
        } => json!({
            "family": "power",
            "exponent": exponent,
            "arg_total": json9(*arg_total),
            "pinned_coeff": pinned_coeff.map(|c| json_pair(c.re, c.im)),
        }),
        FamilyDescriptor::ScaledAffine { scale, exponent } => json!({
            "family": "scaled_affine",
            "exponent": exponent,
            "scale": json_pair(scale.re, scale.im),
        }),
        FamilyDescriptor::Exp { args } => json!({
            "family": "exp",
            "arg_set": arg_set_to_json(args),
        }),
        FamilyDescriptor::Precomposition { .. } => json!({ "family": "precomposition" }),
    }
}

fn arg_set_to_json(args: &ArgSet) -> Value {
    match args {
        ArgSet::Single(v) => json!({ "kind": "single", "values": [json9(*v)] }),
        ArgSet::Finite(vs) => json!({
            "kind": "finite",
            "values": vs.iter().map(|&v| json9(v)).collect::<Vec<_>>(),
        }),
        ArgSet::Arcs(arcs) => json!({
            "kind": "arcs",
            "arcs": arcs
                .iter()
                .map(|a| Value::Array(vec![json9(a.lo()), json9(a.length())]))
                .collect::<Vec<_>>(),
        }),
        ArgSet::AllNonzero => json!({ "kind": "all_nonzero" }),
    }
}

/// A descriptor parsed back from JSON. The precomposition family drops its
/// function payload in the schema, so the parsed form is payload-free too.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedDescriptor {
    Power {
        arg_total: f64,
        exponent: i32,
        pinned_coeff: Option<(f64, f64)>,
    },
    ScaledAffine {
        scale: (f64, f64),
        exponent: i32,
    },
    Exp {
        args: ArgSet,
    },
    Precomposition,
}

impl ParsedDescriptor {
    fn to_json(&self) -> Value {
        match self {
            ParsedDescriptor::Power {
                arg_total,
                exponent,
                pinned_coeff,
            } => json!({
                "family": "power",
                "exponent": exponent,
                "arg_total": json9(*arg_total),
                "pinned_coeff": pinned_coeff.map(|(re, im)| json_pair(re, im)),
            }),
            ParsedDescriptor::ScaledAffine { scale, exponent } => json!({
                "family": "scaled_affine",
                "exponent": exponent,
                "scale": json_pair(scale.0, scale.1),
            }),
            ParsedDescriptor::Exp { args } => json!({
                "family": "exp",
                "arg_set": arg_set_to_json(args),
            }),
            ParsedDescriptor::Precomposition => json!({ "family": "precomposition" }),
        }
    }
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().with_context(|| format!("{what}: expected a number"))
}

fn as_i32(v: &Value, what: &str) -> Result<i32> {
    let n = v
        .as_i64()
        .with_context(|| format!("{what}: expected an integer"))?;
    i32::try_from(n).with_context(|| format!("{what}: out of range"))
}

fn as_pair(v: &Value, what: &str) -> Result<(f64, f64)> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .with_context(|| format!("{what}: expected [re, im]"))?;
    Ok((as_f64(&arr[0], what)?, as_f64(&arr[1], what)?))
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).with_context(|| format!("missing field {name:?}"))
}

/// Parse a descriptor-set JSON document, rejecting anything off-schema.
pub fn parse(text: &str) -> Result<Vec<ParsedDescriptor>> {
    let doc: Value = serde_json::from_str(text).context("descriptor JSON")?;
    let entries = doc.as_array().context("expected a top-level array")?;
    entries.iter().map(parse_descriptor).collect()
}

fn parse_descriptor(v: &Value) -> Result<ParsedDescriptor> {
    let obj = v.as_object().context("expected a descriptor object")?;
    let family = field(obj, "family")?
        .as_str()
        .context("family: expected a string")?;
    match family {
        "power" => Ok(ParsedDescriptor::Power {
            arg_total: as_f64(field(obj, "arg_total")?, "arg_total")?,
            exponent: as_i32(field(obj, "exponent")?, "exponent")?,
            pinned_coeff: match field(obj, "pinned_coeff")? {
                Value::Null => None,
                other => Some(as_pair(other, "pinned_coeff")?),
            },
        }),
        "scaled_affine" => Ok(ParsedDescriptor::ScaledAffine {
            scale: as_pair(field(obj, "scale")?, "scale")?,
            exponent: as_i32(field(obj, "exponent")?, "exponent")?,
        }),
        "exp" => Ok(ParsedDescriptor::Exp {
            args: parse_arg_set(field(obj, "arg_set")?)?,
        }),
        "precomposition" => Ok(ParsedDescriptor::Precomposition),
        other => bail!("unknown family {other:?}"),
    }
}

fn parse_arg_set(v: &Value) -> Result<ArgSet> {
    let obj = v.as_object().context("arg_set: expected an object")?;
    let kind = field(obj, "kind")?
        .as_str()
        .context("arg_set.kind: expected a string")?;
    match kind {
        "single" => {
            let values = field(obj, "values")?
                .as_array()
                .filter(|a| a.len() == 1)
                .context("arg_set.values: single takes exactly one value")?;
            Ok(ArgSet::Single(as_f64(&values[0], "arg_set.values")?))
        }
        "finite" => {
            let values = field(obj, "values")?
                .as_array()
                .context("arg_set.values: expected an array")?;
            let values: Result<Vec<f64>> = values
                .iter()
                .map(|v| as_f64(v, "arg_set.values"))
                .collect();
            Ok(ArgSet::Finite(values?))
        }
        "arcs" => {
            let arcs = field(obj, "arcs")?
                .as_array()
                .context("arg_set.arcs: expected an array")?;
            let arcs: Result<Vec<Arc>> = arcs
                .iter()
                .map(|a| as_pair(a, "arg_set.arcs").map(|(lo, len)| Arc::new(lo, len)))
                .collect();
            Ok(ArgSet::Arcs(arcs?))
        }
        "all_nonzero" => Ok(ArgSet::AllNonzero),
        other => bail!("unknown arg_set kind {other:?}"),
    }
}

/// Parse and re-emit a descriptor document. Output that survives this
/// round trip byte-identically is exactly on schema.
pub fn reserialize(text: &str) -> Result<String> {
    let parsed = parse(text)?;
    let doc = Value::Array(parsed.iter().map(|d| d.to_json()).collect());
    Ok(serde_json::to_string_pretty(&doc).expect("serializing plain JSON values"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use zalcman_core::classify::classify;
    use zalcman_core::model::{PolynomialSpec, RationalSpec};
    use zalcman_core::FuncSpec;

    fn battery() -> Vec<(FuncSpec, f64)> {
        let z2 = PolynomialSpec::from_roots(
            Complex64::new(1.0, 0.0),
            &[(Complex64::new(0.0, 0.0), 2)],
        )
        .unwrap();
        let poly = FuncSpec::Polynomial(z2.clone());
        let exp = FuncSpec::exp_rational(RationalSpec::one(), z2).unwrap();
        let rat = FuncSpec::Rational(
            RationalSpec::new(
                Complex64::new(1.0, 0.0),
                &[(Complex64::new(0.0, 0.0), 1)],
                &[(Complex64::new(2.0, 0.0), 1)],
            )
            .unwrap(),
        );
        vec![(poly, 0.5), (exp, 0.5), (exp_linear(), 0.0), (rat, -0.25)]
    }

    fn exp_linear() -> FuncSpec {
        let z = PolynomialSpec::from_roots(
            Complex64::new(1.0, 0.0),
            &[(Complex64::new(0.0, 0.0), 1)],
        )
        .unwrap();
        FuncSpec::exp_rational(RationalSpec::one(), z).unwrap()
    }

    #[test]
    fn emitted_json_survives_the_round_trip() {
        for (f, alpha) in battery() {
            let set = classify(&f, alpha).unwrap();
            let text = serde_json::to_string_pretty(&set_to_json(&set)).unwrap();
            let back = reserialize(&text).unwrap();
            assert_eq!(text, back, "round trip changed bytes for alpha={alpha}");
        }
    }

    #[test]
    fn off_schema_documents_are_rejected() {
        assert!(parse(r#"[{"family":"power","exponent":1}]"#).is_err());
        assert!(parse(r#"[{"family":"vortex"}]"#).is_err());
        assert!(parse(r#"{"family":"power"}"#).is_err());
        assert!(parse(r#"[{"family":"exp","arg_set":{"kind":"arcs","arcs":[[0.0]]}}]"#).is_err());
    }
}
