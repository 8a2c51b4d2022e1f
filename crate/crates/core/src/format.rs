//! Number formatting shared by report writers.

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn json_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Plain decimal rounded to twelve significant digits, trailing zeros removed.
pub fn csv_number(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let mut s = if magnitude > 11 {
        let unit = 10f64.powi(magnitude - 11);
        format!("{:.0}", (v / unit).round() * unit)
    } else {
        let decimals = (11 - magnitude) as usize;
        format!("{v:.decimals$}")
    };
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}
