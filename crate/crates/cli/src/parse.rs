//! Command-line value parsers.

use std::str::FromStr;

use caustica::Rational;

use crate::List;

/// One coefficient: an integer, `p/q`, or a finite decimal such as `-0.25`.
pub fn rational(token: &str) -> Result<Rational, String> {
    let t = token.trim();
    if let Some((int, frac)) = t.split_once('.') {
        let digits = format!("{int}{frac}");
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad number '{t}'"));
        }
        return Rational::from_str(&format!("{digits}/1{}", "0".repeat(frac.len()))).map_err(|_| format!("bad number '{t}'"));
    }
    Rational::from_str(t).map_err(|_| format!("bad number '{t}'"))
}

/// Ascending coefficient list `a0,a1,...`.
pub fn rationals(list: &str) -> Result<List<Rational>, String> {
    if list.trim().is_empty() {
        return Ok(List(Vec::new()));
    }
    list.split(',').map(rational).collect::<Result<_, _>>().map(List)
}

pub fn floats(list: &str) -> Result<List<f64>, String> {
    if list.trim().is_empty() {
        return Ok(List(Vec::new()));
    }
    list.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => rational(t).map(|q| caustica::poly::rational_to_f64(&q)),
            }
        })
        .collect::<Result<_, _>>()
        .map(List)
}

/// `name=value` tolerance override.
pub fn tolerance(arg: &str) -> Result<(String, f64), String> {
    let (name, value) = arg.split_once('=').ok_or_else(|| format!("expected name=value, got '{arg}'"))?;
    let value = value.trim().parse::<f64>().map_err(|_| format!("bad tolerance value '{value}'"))?;
    Ok((name.trim().to_string(), value))
}
