use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Commutative ring with unit. Implemented by both scalar backends and by
/// polynomials themselves, so that bivariate polynomials can be written as
/// `Polynomial<Polynomial<Rational>>`.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
}

/// A scalar backend: exact rationals or complex floats.
pub trait Field: Ring + Div<Output = Self> {
    /// Whether arithmetic in this backend is exact.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn to_complex(&self) -> Complex64;

    /// Absolute value as a float.
    fn magnitude(&self) -> f64;
}

impl Ring for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
}

impl Ring for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Nearest float to a rational. Falls back to a scaled division when the
/// numerator or denominator alone overflows `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (q.numer(), q.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let n = (n >> shift).to_f64().unwrap_or(0.0);
    let d = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

