#![allow(dead_code)]

use caustica::poly::{rational, Rational};
use caustica::Polynomial;
use rand::Rng;

pub type P = Polynomial<Rational>;

/// Integer polynomial of the given degree, coefficients in `[-bound, bound]`.
pub fn random_int_poly(rng: &mut impl Rng, degree: usize, bound: i64) -> P {
    let mut c: Vec<i64> = (0..=degree).map(|_| rng.random_range(-bound..=bound)).collect();
    while c[degree] == 0 {
        c[degree] = rng.random_range(-bound..=bound);
    }
    P::from_i64(&c)
}

/// Random integer polynomial with `deg` distinct roots, certified by
/// `gcd(φ, φ') = 1`.
pub fn squarefree_poly(rng: &mut impl Rng, degree: usize, bound: i64) -> P {
    loop {
        let p = random_int_poly(rng, degree, bound);
        if p.gcd(&p.derivative()).value.deg() == Some(0) {
            return p;
        }
    }
}

pub fn q(n: i64) -> Rational {
    rational(n, 1)
}
