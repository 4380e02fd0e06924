//! Deterministic number formatting shared by the text and JSON reports.

/// Round to `sig` significant digits by decimal round-trip.
///
/// Used when building the JSON report so that serialized numbers carry at
/// most `sig` significant digits (the shortest round-trip representation of
/// the rounded value never needs more).
pub(crate) fn round_sig(x: f64, sig: usize) -> f64 {
    debug_assert!(sig >= 1);
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", sig - 1, x).parse().expect("float round-trip")
}

/// Format with exactly `sig` significant digits, keeping trailing zeros.
///
/// Positional notation while the exponent fits (`1.00000`, `0.333333`),
/// scientific otherwise (`3.45678e-7`). Output depends only on the value,
/// so identical inputs always render identical bytes.
pub(crate) fn format_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        let mut s = String::from("0");
        if sig > 1 {
            s.push('.');
            s.push_str(&"0".repeat(sig - 1));
        }
        return s;
    }

    let sci = format!("{:.*e}", sig - 1, x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), sig);

    let sign = if x < 0.0 { "-" } else { "" };
    if exp < -4 || exp >= sig as i32 {
        return format!("{sign}{sci}");
    }

    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let split = exp as usize + 1;
        if split >= digits.len() {
            digits
        } else {
            format!("{}.{}", &digits[..split], &digits[split..])
        }
    };
    format!("{sign}{body}")
}
