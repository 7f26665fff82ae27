//! Deterministic output formatting.
//!
//! Every report starts with a versioned comment line and renders floats at
//! nine significant digits, so repeated runs are byte-identical and small
//! schema changes are detectable downstream.

pub const CSV_HEADER: &str = "# zalcman-lab v1";

/// Nine significant digits in scientific notation.
pub fn fmt9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Round to the nine-significant-digit value that `fmt9` prints, for JSON
/// fields that should carry the same precision as the text reports.
pub fn round9(x: f64) -> f64 {
    fmt9(x).parse().unwrap()
}

/// JSON number rounded to nine significant digits.
pub fn json9(x: f64) -> serde_json::Value {
    serde_json::Value::from(round9(x))
}

/// Complex number as the `[re, im]` pair used across the JSON schema.
pub fn json_pair(re: f64, im: f64) -> serde_json::Value {
    serde_json::Value::Array(vec![json9(re), json9(im)])
}
