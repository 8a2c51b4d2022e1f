//! Sparse polynomials in the seven catalog variables `x, y, c1, c2, c3, s1, s2`
//! with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{Field, Polynomial, Rational};

pub const N_VARS: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    C1 = 2,
    C2 = 3,
    C3 = 4,
    S1 = 5,
    S2 = 6,
}

impl Var {
    pub const ALL: [Var; N_VARS] = [Var::X, Var::Y, Var::C1, Var::C2, Var::C3, Var::S1, Var::S2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "c1", "c2", "c3", "s1", "s2"][self.index()]
    }
}

pub type Exponents = [u8; N_VARS];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([([0; N_VARS], c)])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; N_VARS];
        e[v.index()] = 1;
        Self::from_terms([(e, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn degree_in(&self, v: Var) -> Option<usize> {
        self.terms.keys().map(|e| e[v.index()] as usize).max()
    }

    pub fn diff(&self, v: Var) -> Self {
        let i = v.index();
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e2 = *e;
            e2[i] -= 1;
            (e2, c * Rational::from_integer(e[i].into()))
        }))
    }

    /// Replace `v` by the polynomial `by`.
    pub fn substitute(&self, v: Var, by: &MPoly) -> Self {
        let i = v.index();
        let mut powers = vec![MPoly::constant(Rational::one())];
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * by;
                powers.push(next);
            }
            let mut rest = *e;
            rest[i] = 0;
            let term = MPoly::from_terms([(rest, c.clone())]);
            out = out + &term * &powers[k];
        }
        out
    }

    /// Value at a full assignment, indexed by [`Var::index`].
    pub fn eval<T: Field>(&self, vals: &[T; N_VARS]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (v, &k) in vals.iter().zip(e.iter()) {
                for _ in 0..k {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Univariate polynomial in `v`, every other variable fixed by `vals`.
    pub fn to_univariate<T: Field>(&self, v: Var, vals: &[T; N_VARS]) -> Polynomial<T> {
        let i = v.index();
        let mut coeffs = vec![T::zero(); self.degree_in(v).map_or(0, |d| d + 1)];
        for (e, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (j, (val, &k)) in vals.iter().zip(e.iter()).enumerate() {
                if j != i {
                    for _ in 0..k {
                        t = t * val.clone();
                    }
                }
            }
            let slot = &mut coeffs[e[i] as usize];
            *slot = slot.clone() + t;
        }
        Polynomial::new(coeffs)
    }

    /// Polynomial in `outer` whose coefficients are polynomials in `inner`,
    /// all remaining variables fixed by `vals`.
    pub fn to_bivariate(&self, outer: Var, inner: Var, vals: &[Rational; N_VARS]) -> Polynomial<Polynomial<Rational>> {
        let (o, n) = (outer.index(), inner.index());
        let mut grouped: BTreeMap<u8, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[o] = 0;
            grouped.entry(e[o]).or_default().add_term(rest, c.clone());
        }
        let deg = grouped.keys().last().map_or(0, |&d| d as usize + 1);
        let mut coeffs = vec![Polynomial::zero(); deg];
        for (k, p) in grouped {
            coeffs[k as usize] = p.to_univariate(Var::ALL[n], vals);
        }
        Polynomial::new(coeffs)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for v in Var::ALL {
                match e[v.index()] {
                    0 => {}
                    1 => write!(f, "*{}", v.name())?,
                    k => write!(f, "*{}^{k}", v.name())?,
                }
            }
        }
        Ok(())
    }
}
