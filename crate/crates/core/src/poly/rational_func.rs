use super::{Field, Polynomial};
use crate::{Error, Result};

/// Quotient `num / den` of two polynomials with `den ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunc<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Field> RationalFunc<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self { num: p, den: Polynomial::constant(T::one()) }
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn eval(&self, t: &T) -> T {
        self.num.eval(t) / self.den.eval(t)
    }

    /// Whether the function is defined at every root of `phi`, i.e. the
    /// denominator shares no factor with `phi`.
    pub fn defined_on_roots(&self, phi: &Polynomial<T>) -> bool {
        self.den.gcd(phi).value.degree() == 0
    }
}
