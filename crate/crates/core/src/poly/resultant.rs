//! Sylvester resultants and discriminants via fraction-free (Bareiss)
//! elimination.

use num_complex::Complex64;

use super::{Field, Polynomial, Rational, Ring};
use crate::{Error, Result};

/// Integral domain in which Bareiss' divisions are exact.
pub trait Domain: Ring {
    /// `self / d`, where `d` is known to divide `self`.
    fn exact_div(&self, d: &Self) -> Self;

    /// Preference when choosing a pivot; zero means unusable.
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Domain for Rational {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

impl Domain for Complex64 {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }

    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

impl Domain for Polynomial<Rational> {
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divmod(d).expect("Bareiss pivot is nonzero");
        debug_assert!(r.is_zero(), "Bareiss division must be exact");
        q
    }
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n): n shifted rows of
/// p's coefficients followed by m shifted rows of q's, highest power first.
pub fn sylvester<T: Ring>(p: &Polynomial<T>, q: &Polynomial<T>) -> Vec<Vec<T>> {
    let m = p.deg().unwrap_or(0);
    let n = q.deg().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, count, deg) in [(p, n, m), (q, m, n)] {
        for shift in 0..count {
            let mut row = vec![T::zero(); size];
            for k in 0..=deg {
                row[shift + k] = poly.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant<T: Domain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let (best, weight) = (k..n)
            .map(|r| (r, m[r][k].pivot_weight()))
            .fold((k, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if weight == 0.0 {
            return T::zero();
        }
        if best != k {
            m.swap(best, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return T::one();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of two nonzero polynomials, `det Sylvester(p, q)`.
pub fn resultant<T: Domain>(p: &Polynomial<T>, q: &Polynomial<T>) -> Result<T> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    Ok(determinant(sylvester(p, q)))
}

/// Resultant with respect to an elimination variable whose formal degrees are
/// known in advance. Fails if specialisation has killed a leading coefficient.
pub fn resultant_with_degrees<T: Domain>(
    p: &Polynomial<T>,
    deg_p: usize,
    q: &Polynomial<T>,
    deg_q: usize,
) -> Result<T> {
    if p.deg() != Some(deg_p) || q.deg() != Some(deg_q) {
        return Err(Error::ZeroLeadingCoefficient);
    }
    resultant(p, q)
}

/// `(-1)^{n(n-1)/2} Res(φ, φ') / a_n`.
pub fn discriminant<T: Field + Domain>(phi: &Polynomial<T>) -> Result<T> {
    let n = match phi.deg() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::DegreeTooLow { degree: phi.degree(), min: 1 }),
    };
    let lead = phi.leading().cloned().expect("nonzero");
    let res = resultant(phi, &phi.derivative())? / lead;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -res } else { res })
}
