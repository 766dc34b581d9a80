//! Deterministic number formatting: 12 significant digits, scientific only
//! below `1e-4` in magnitude.

const SIG_DIGITS: usize = 12;

pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < 1e-4 {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (SIG_DIGITS as i32 - 1 - magnitude).max(0) as usize;
    let s = trim_zeros(&format!("{x:.decimals$}")).to_string();
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// `x` rounded to the printed precision, for JSON output.
pub fn round_f64(x: f64) -> f64 {
    fmt_f64(x).parse().unwrap_or(x)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
