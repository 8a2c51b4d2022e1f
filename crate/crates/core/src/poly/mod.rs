//! Dense univariate polynomials over a [`Ring`], with the field-only
//! operations (division, gcd, interpolation, roots) available when the
//! coefficients form a [`Field`].

mod interp;
mod rational_func;
pub mod resultant;
pub mod roots;
mod scalar;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub use interp::interpolate;
pub use rational_func::RationalFunc;
pub use resultant::{discriminant, resultant, Domain};
pub use roots::{roots, RootConfig, RootSet};
pub use scalar::{rational, rational_from_f64, rational_to_f64, Field, Rational, Ring};

/// Polynomial `a_0 + a_1 x + ... + a_n x^n`, stored in ascending order.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, a| acc * t.clone() + a.clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Polynomial<T> {
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::new(coeffs.iter().map(T::from_rational).collect())
    }

    pub fn to_complex(&self) -> Polynomial<Complex64> {
        self.map(Field::to_complex)
    }

    /// Evaluate at a complex point regardless of backend.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, a| acc * z + a.to_complex())
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    /// Scaled to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let inv = T::one() / lead.clone();
                let mut p = self.scale(&inv);
                if let Some(last) = p.coeffs.last_mut() {
                    *last = T::one();
                }
                p
            }
        }
    }

    /// Division with remainder: `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let n = divisor.deg().ok_or(Error::DivisionByZero)?;
        let Some(m) = self.deg() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if m < n {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor.coeffs[n].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); m - n + 1];
        for i in (n..=m).rev() {
            let q = rem[i].clone() / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate().take(n) {
                rem[i - n + j] = rem[i - n + j].clone() - q.clone() * d.clone();
            }
            rem[i] = T::zero();
            quot[i - n] = q;
        }
        rem.truncate(n);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.divmod(divisor).map(|(_, r)| r)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    ///
    /// Only certified for exact backends; in the float backend remainder
    /// coefficients below `1e-10` of the running scale are treated as zero.
    pub fn gcd(&self, other: &Self) -> Gcd<T> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            let r = if T::EXACT { r } else { r.chop(1e-10 * b.max_coeff().max(a.max_coeff())) };
            a = b;
            b = r;
        }
        Gcd {
            value: a.monic(),
            certified: T::EXACT,
        }
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let r = if T::EXACT { r } else { r.chop(1e-10 * r1.max_coeff().max(r0.max_coeff())) };
            let s = s0 - &q * &s1;
            let t = t0 - &q * &t1;
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lead) => {
                let inv = T::one() / lead;
                (r0.monic(), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    fn chop(&self, tol: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| if c.magnitude() <= tol { T::zero() } else { c.clone() })
                .collect(),
        )
    }
}

/// Result of [`Polynomial::gcd`]. `certified` is false for float backends,
/// where the answer depends on a cancellation threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct Gcd<T> {
    pub value: Polynomial<T>,
    pub certified: bool,
}

impl<T: Ring> Add for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Ring> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Sub for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Ring> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Mul for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Ring> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Ring> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Ring> Zero for Polynomial<T> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Polynomial<T> {
    fn one() -> Self {
        Self { coeffs: vec![T::one()] }
    }
}

impl<T: Ring> Ring for Polynomial<T> {
    fn from_i64(v: i64) -> Self {
        Self::constant(T::from_i64(v))
    }
}

impl fmt::Display for Polynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
