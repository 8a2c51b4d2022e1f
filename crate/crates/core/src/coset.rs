//! Unique representatives in the quotient ring `K[x]/(φ)` and the machinery
//! built on them: the coefficient table of `φ'·x^k`, Newton power sums, and
//! the Euler trace `Σ h(x_i) = b_{n-1} / a_n`.
//!
//! Rational functions `h = p/q` enter the quotient ring only when `q` has no
//! common root with `φ`; their representative is `p · q^{-1} mod φ`, with the
//! inverse taken by extended Euclid.

use crate::poly::{roots, Field, Polynomial, RationalFunc, RootConfig};
use crate::{Error, Result};

/// Relative root separation below which float-backend roots count as repeated.
pub const SEPARATION_TOL: f64 = 1e-7;

/// The representative of a coset: `deg rep < deg modulus`.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetRep<T> {
    modulus: Polynomial<T>,
    rep: Polynomial<T>,
}

impl<T: Field> CosetRep<T> {
    pub fn modulus(&self) -> &Polynomial<T> {
        &self.modulus
    }

    pub fn rep(&self) -> &Polynomial<T> {
        &self.rep
    }

    /// Coefficient `c_i` of `x^i` in the representative.
    pub fn coeff(&self, i: usize) -> T {
        self.rep.coeff(i)
    }
}

fn degree_of<T: Field>(phi: &Polynomial<T>) -> Result<usize> {
    match phi.deg() {
        None => Err(Error::DivisionByZero),
        Some(n) => Ok(n),
    }
}

pub fn reduce_mod<T: Field>(g: &Polynomial<T>, phi: &Polynomial<T>) -> Result<CosetRep<T>> {
    let rep = g.rem(phi)?;
    Ok(CosetRep { modulus: phi.clone(), rep })
}

/// Inverse of `q` in `K[x]/(φ)`.
pub fn invert_mod<T: Field>(q: &Polynomial<T>, phi: &Polynomial<T>) -> Result<CosetRep<T>> {
    degree_of(phi)?;
    let (g, s, _) = q.ext_gcd(phi);
    match g.deg() {
        Some(0) => reduce_mod(&s, phi),
        Some(d) => Err(Error::NotInvertible { gcd_degree: d }),
        // q ≡ 0 and φ ≡ 0 cannot both hold here
        None => Err(Error::DivisionByZero),
    }
}

/// Representative of a rational function `h ∈ R`.
pub fn coset_rep_rational<T: Field>(h: &RationalFunc<T>, phi: &Polynomial<T>) -> Result<CosetRep<T>> {
    let inv = invert_mod(h.den(), phi)?;
    reduce_mod(&(h.num() * inv.rep()), phi)
}

/// `b_{j,k}`: coefficient of `x^j` in the representative of `φ'·x^k`.
///
/// Stored by column; column `k` is the representative `r_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable<T> {
    modulus: Polynomial<T>,
    columns: Vec<Vec<T>>,
}

impl<T: Field> CoefficientTable<T> {
    pub fn modulus(&self) -> &Polynomial<T> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg().expect("nonzero modulus")
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    /// `b_{j,k}`; zero for `j ≥ n` or `j < 0` as the recursion's sentinels require.
    pub fn get(&self, j: isize, k: usize) -> T {
        if j < 0 {
            return T::zero();
        }
        self.columns[k].get(j as usize).cloned().unwrap_or_else(T::zero)
    }

    /// Column `k` as the polynomial `r_k`.
    pub fn column(&self, k: usize) -> Polynomial<T> {
        Polynomial::new(self.columns[k].clone())
    }

    /// Row `b_{n-1,·}`, i.e. `a_n N_k`.
    pub fn top_row(&self) -> Vec<T> {
        let n = self.degree();
        self.columns.iter().map(|c| c[n - 1].clone()).collect()
    }
}

/// The `n × n` table for `φ` of degree `n`.
pub fn coefficient_table<T: Field>(phi: &Polynomial<T>) -> Result<CoefficientTable<T>> {
    let n = degree_of(phi)?;
    coefficient_table_with(phi, n)
}

/// Table with an arbitrary number of columns; the recursion is multiplication
/// by `x` modulo `φ` and runs past `k = n-1` unchanged.
pub fn coefficient_table_with<T: Field>(phi: &Polynomial<T>, n_columns: usize) -> Result<CoefficientTable<T>> {
    let n = degree_of(phi)?;
    if n == 0 {
        return Err(Error::DegreeTooLow { degree: 0, min: 1 });
    }
    let a = |i: usize| phi.coeff(i);
    let lead = a(n);
    let mut columns: Vec<Vec<T>> = Vec::with_capacity(n_columns);
    // b_{j,0} = (j+1) a_{j+1}
    let first: Vec<T> = (0..n).map(|j| T::from_i64(j as i64 + 1) * a(j + 1)).collect();
    if n_columns > 0 {
        columns.push(first);
    }
    for k in 1..n_columns {
        let prev = &columns[k - 1];
        let top = prev[n - 1].clone();
        // b_{j,k} = -(a_j / a_n) b_{n-1,k-1} + b_{j-1,k-1}
        let col: Vec<T> = (0..n)
            .map(|j| {
                let carry = if j == 0 { T::zero() } else { prev[j - 1].clone() };
                carry - a(j) / lead.clone() * top.clone()
            })
            .collect();
        columns.push(col);
    }
    Ok(CoefficientTable { modulus: phi.clone(), columns })
}

/// Representative of `φ'·h_*` as the combination `Σ_j c_j r_j` of table columns.
pub fn combine_rep<T: Field>(h_star: &CosetRep<T>, table: &CoefficientTable<T>) -> Result<CosetRep<T>> {
    if h_star.modulus != table.modulus {
        return Err(Error::ModulusMismatch);
    }
    let n = table.degree();
    let mut out = vec![T::zero(); n];
    for (k, c) in h_star.rep.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, b) in table.columns[k].iter().enumerate() {
            out[j] = out[j].clone() + c.clone() * b.clone();
        }
    }
    Ok(CosetRep { modulus: table.modulus.clone(), rep: Polynomial::new(out) })
}

/// Power sums `N_0..=N_upto` of the roots.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonSums<T> {
    pub modulus: Polynomial<T>,
    pub values: Vec<T>,
}

/// Classical recursion `k a_{n-k} + a_{n-k+1} N_1 + ... + a_n N_k = 0`, with
/// `a_i = 0` for `i < 0`.
pub fn newton_sums_recursive<T: Field>(phi: &Polynomial<T>, upto: usize) -> Result<NewtonSums<T>> {
    let n = degree_of(phi)?;
    let lead = phi.coeff(n);
    let a = |i: isize| if i < 0 { T::zero() } else { phi.coeff(i as usize) };
    let mut values = vec![T::from_i64(n as i64)];
    for k in 1..=upto {
        let ki = k as isize;
        let mut acc = T::from_i64(k as i64) * a(n as isize - ki);
        for (j, nj) in values.iter().enumerate().skip(1) {
            acc = acc + a(n as isize - ki + j as isize) * nj.clone();
        }
        values.push(-acc / lead.clone());
    }
    Ok(NewtonSums { modulus: phi.clone(), values })
}

/// `N_k = b_{n-1,k} / a_n`, read from the coefficient table.
pub fn newton_sums_coset<T: Field>(phi: &Polynomial<T>, upto: usize) -> Result<NewtonSums<T>> {
    let n = degree_of(phi)?;
    let table = coefficient_table_with(phi, upto + 1)?;
    let lead = phi.coeff(n);
    let values = table.top_row().into_iter().map(|b| b / lead.clone()).collect();
    Ok(NewtonSums { modulus: phi.clone(), values })
}

/// Whether `φ` has `deg φ` distinct roots: `gcd(φ, φ') = 1` for exact
/// backends, relative root separation above [`SEPARATION_TOL`] otherwise.
pub fn has_distinct_roots<T: Field>(phi: &Polynomial<T>) -> Result<bool> {
    if T::EXACT {
        return Ok(phi.gcd(&phi.derivative()).value.degree() == 0);
    }
    if phi.degree() <= 1 {
        return Ok(true);
    }
    let rs = roots(phi, &RootConfig::default())?;
    Ok(rs.min_separation >= SEPARATION_TOL * rs.scale())
}

/// `Σ_i h(x_i)` over the roots of `φ`, without computing the roots:
/// `h_*` is combined with the coefficient table to get the top coefficient
/// of the representative of `φ'·h`.
pub fn euler_trace<T: Field>(h: &RationalFunc<T>, phi: &Polynomial<T>) -> Result<T> {
    let n = degree_of(phi)?;
    if n == 0 {
        return Err(Error::DegreeTooLow { degree: 0, min: 1 });
    }
    if !has_distinct_roots(phi)? {
        return Err(Error::NonDistinctRoots);
    }
    let h_star = coset_rep_rational(h, phi)?;
    let table = coefficient_table(phi)?;
    let r = combine_rep(&h_star, &table)?;
    Ok(r.coeff(n - 1) / phi.coeff(n))
}
