//! Deterministic JSON rendering of the run report.

use serde_json::Value;

use crate::numfmt::round_sig;

/// Significant digits carried by serialized floats.
const JSON_SIG_DIGITS: usize = 12;

/// Serialize any value to pretty JSON with deterministic key order and
/// floats trimmed to twelve significant digits.
///
/// Keys are emitted in sorted order (serde_json's map representation), so
/// identical inputs always produce identical bytes.
pub fn to_deterministic_json<T: serde::Serialize>(value: &T) -> serde_json::Result<String> {
    let mut tree = serde_json::to_value(value)?;
    round_floats(&mut tree);
    let mut text = serde_json::to_string_pretty(&tree)?;
    text.push('\n');
    Ok(text)
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            // Integers (counts, seeds) pass through untouched.
            if n.is_f64() {
                let rounded = round_sig(n.as_f64().expect("checked is_f64"), JSON_SIG_DIGITS);
                if let Some(replacement) = serde_json::Number::from_f64(rounded) {
                    *n = replacement;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}
