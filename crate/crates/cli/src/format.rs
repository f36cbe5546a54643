//! Number formatting shared by tables and data files.

/// Percent value rounded half away from zero to one decimal, never "-0.0".
pub fn pct1(fraction: f64) -> String {
    format!("{:.1}", round1(fraction * 100.0))
}

/// Rounds half away from zero to one decimal place.
pub fn round1(v: f64) -> f64 {
    (v * 10.0).round() / 10.0 + 0.0
}

/// `%g`-style rendering with six significant digits.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.5e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
