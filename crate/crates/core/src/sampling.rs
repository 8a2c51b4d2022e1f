//! Seeded draws of admissible parameters and source points.
//!
//! Components are multiples of 1/64 in [-2, 2], so the same draw is exact in
//! the rational backend and exactly representable in `f64`. Draws that land
//! within [`GUARD_BALL`] of a guard singularity, or too near a caustic, are
//! thrown away and redrawn.

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{Params, SingularityDef, SingularityId};
use crate::poly::{rational, Field, Rational};
use crate::solver::{analyse_noncaustic, SolverConfig};
use crate::{Error, Result};

pub const DENOMINATOR: i64 = 64;
pub const RANGE: i64 = 2;
pub const GUARD_BALL: f64 = 0.05;
pub const MAX_ATTEMPTS: usize = 100;

/// Independent stream for one trial of a seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform multiple of `1/DENOMINATOR` in `[-RANGE, RANGE]`.
pub fn draw_rational(rng: &mut impl Rng) -> Rational {
    let k = rng.random_range(-RANGE * DENOMINATOR..=RANGE * DENOMINATOR);
    rational(k, DENOMINATOR)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Draw {
    pub params: Params<Rational>,
    /// Candidates discarded before this one.
    pub rejected: usize,
}

fn candidate(def: &SingularityDef, rng: &mut impl Rng) -> Params<Rational> {
    let c = (0..def.id.n_params()).map(|_| draw_rational(rng)).collect();
    let s = [draw_rational(rng), draw_rational(rng)];
    Params::new(c, s)
}

fn parameter_guard(def: &SingularityDef, p: &Params<Rational>) -> bool {
    let away = |v: &Rational| v.magnitude() >= GUARD_BALL;
    match def.id {
        SingularityId::D4plus => away(&p.c[0]),
        SingularityId::D6minus | SingularityId::D6plus => away(&p.s[0]),
        _ => true,
    }
}

/// Back-substitution denominators stay outside the guard ball at every root.
fn root_guard(def: &SingularityDef, p: &Params<Complex64>, roots: &[Complex64]) -> bool {
    roots.iter().all(|&t| def.back_substitute(p, t, GUARD_BALL).is_ok())
}

/// A draw suitable for the numeric solver: guards respected and the source
/// point away from the caustic.
pub fn draw_numeric(def: &SingularityDef, rng: &mut impl Rng, cfg: &SolverConfig) -> Result<Draw> {
    draw_with(def, rng, |p| {
        let pc = p.map(Field::to_complex);
        let Ok(phi) = def.build_phi(&pc) else { return false };
        match analyse_noncaustic(&phi, cfg) {
            Ok(info) => root_guard(def, &pc, &info.roots.roots),
            Err(_) => false,
        }
    })
}

/// A draw suitable for the exact identities: additionally φ is squarefree
/// and the magnification's denominator is a unit modulo φ.
pub fn draw_exact(def: &SingularityDef, rng: &mut impl Rng) -> Result<Draw> {
    draw_with(def, rng, |p| {
        let Ok(phi) = def.build_phi(p) else { return false };
        let Ok(mag) = def.magnification(p) else { return false };
        phi.gcd(&phi.derivative()).value.deg() == Some(0) && mag.defined_on_roots(&phi)
    })
}

fn draw_with(
    def: &SingularityDef,
    rng: &mut impl Rng,
    mut accept: impl FnMut(&Params<Rational>) -> bool,
) -> Result<Draw> {
    for rejected in 0..MAX_ATTEMPTS {
        let p = candidate(def, rng);
        if parameter_guard(def, &p) && accept(&p) {
            return Ok(Draw { params: p, rejected });
        }
    }
    Err(Error::GuardViolation(format!("{}: no admissible draw in {MAX_ATTEMPTS} attempts", def.id)))
}

/// A random point `(x, y)` with rational coordinates, for locus checks.
pub fn draw_point(rng: &mut impl Rng) -> (Rational, Rational) {
    (draw_rational(rng), draw_rational(rng))
}

/// Nonzero rational point, as used where a coordinate sits in a denominator.
pub fn draw_nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let v = draw_rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}
