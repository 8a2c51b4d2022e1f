//! The eleven generic caustic singularities of codimension one to five.
//!
//! Every normal form lives in `data/catalog.toml` as lists of exact terms.
//! On first access the file is parsed, the Jacobian of the induced map is
//! re-derived and compared against the stored one, and the sign relating
//! `det Jac f_c` to `det Hess F_{c,s}` on the pre-image locus is computed.

mod mpoly;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::poly::{resultant, Field, Polynomial, Rational, RationalFunc};
use crate::{Error, Result};

pub use mpoly::{Exponents, MPoly, Var, N_VARS};

const CATALOG_SRC: &str = include_str!("../../data/catalog.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityId {
    A2,
    A3,
    A4,
    D4minus,
    D4plus,
    A5,
    D5,
    A6,
    E6,
    D6minus,
    D6plus,
}

impl SingularityId {
    pub const ALL: [SingularityId; 11] = [
        Self::A2,
        Self::A3,
        Self::A4,
        Self::D4minus,
        Self::D4plus,
        Self::A5,
        Self::D5,
        Self::A6,
        Self::E6,
        Self::D6minus,
        Self::D6plus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::A2 => "A2",
            Self::A3 => "A3",
            Self::A4 => "A4",
            Self::D4minus => "D4minus",
            Self::D4plus => "D4plus",
            Self::A5 => "A5",
            Self::D5 => "D5",
            Self::A6 => "A6",
            Self::E6 => "E6",
            Self::D6minus => "D6minus",
            Self::D6plus => "D6plus",
        }
    }

    pub fn common_name(self) -> &'static str {
        match self {
            Self::A2 => "fold",
            Self::A3 => "cusp",
            Self::A4 => "swallowtail",
            Self::D4minus => "elliptic umbilic",
            Self::D4plus => "hyperbolic umbilic",
            Self::A5 => "butterfly",
            Self::D5 => "parabolic umbilic",
            Self::A6 => "wigwam",
            Self::E6 => "symbolic umbilic",
            Self::D6minus => "2nd elliptic umbilic",
            Self::D6plus => "2nd hyperbolic umbilic",
        }
    }

    pub fn codim(self) -> usize {
        match self {
            Self::A2 => 1,
            Self::A3 => 2,
            Self::A4 | Self::D4minus | Self::D4plus => 3,
            Self::A5 | Self::D5 => 4,
            Self::A6 | Self::E6 | Self::D6minus | Self::D6plus => 5,
        }
    }

    /// Largest possible number of pre-images.
    pub fn n_images(self) -> usize {
        self.codim() + 1
    }

    /// Number of unfolding parameters `c`.
    pub fn n_params(self) -> usize {
        self.codim().saturating_sub(2)
    }
}

impl fmt::Display for SingularityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SingularityId {
    type Err = Error;

    /// Accepts labels (`D4plus`, `d4+`) and common names (`hyperbolic umbilic`).
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('+', "plus").replace('-', "minus").replace('_', " ");
        Self::ALL
            .into_iter()
            .find(|id| key == id.label().to_ascii_lowercase() || key == id.common_name())
            .ok_or_else(|| Error::Invalid(format!("unknown singularity '{s}'")))
    }
}

/// Parameters `c` and source point `s` of one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<T> {
    pub c: Vec<T>,
    pub s: [T; 2],
}

impl<T: Field> Params<T> {
    pub fn new(c: Vec<T>, s: [T; 2]) -> Self {
        Self { c, s }
    }

    /// Variable assignment in [`Var`] order.
    pub fn assignment(&self, x: T, y: T) -> [T; N_VARS] {
        let c = |i: usize| self.c.get(i).cloned().unwrap_or_else(T::zero);
        [x, y, c(0), c(1), c(2), self.s[0].clone(), self.s[1].clone()]
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Params<U> {
        Params { c: self.c.iter().map(&f).collect(), s: [f(&self.s[0]), f(&self.s[1])] }
    }
}

#[derive(Clone, Debug)]
pub struct SingularityDef {
    pub id: SingularityId,
    pub family: MPoly,
    pub map: [MPoly; 2],
    pub jac_det: MPoly,
    pub hess_det: MPoly,
    pub elim_var: Var,
    pub retained: Var,
    pub phi: MPoly,
    pub back_sub_num: MPoly,
    pub back_sub_den: MPoly,
    pub mag_num: MPoly,
    pub mag_den: MPoly,
    pub multiplier: MPoly,
    /// `det Jac f_c = hess_sign · det Hess F_{c,s}` wherever `s = f_c(x, y)`.
    pub hess_sign: i8,
}

type RawTerm = (String, u8, u8, [u8; 3], [u8; 2]);

#[derive(Deserialize)]
struct RawFile {
    singularity: Vec<RawDef>,
}

#[derive(Deserialize)]
struct RawDef {
    label: String,
    name: String,
    codim: usize,
    params: usize,
    eliminate: String,
    family: Vec<RawTerm>,
    map1: Vec<RawTerm>,
    map2: Vec<RawTerm>,
    jacobian: Vec<RawTerm>,
    phi: Vec<RawTerm>,
    back_sub_num: Vec<RawTerm>,
    back_sub_den: Vec<RawTerm>,
    mag_num: Vec<RawTerm>,
    mag_den: Vec<RawTerm>,
    multiplier: Vec<RawTerm>,
}

fn parse_terms(label: &str, field: &str, raw: &[RawTerm]) -> Result<MPoly> {
    let mut terms = Vec::with_capacity(raw.len());
    for (coef, xp, yp, c, s) in raw {
        let q = Rational::from_str(coef)
            .map_err(|_| Error::Catalog(format!("{label}.{field}: bad coefficient '{coef}'")))?;
        terms.push(([*xp, *yp, c[0], c[1], c[2], s[0], s[1]], q));
    }
    Ok(MPoly::from_terms(terms))
}

fn jacobian(map: &[MPoly; 2]) -> MPoly {
    let a = map[0].diff(Var::X);
    let b = map[0].diff(Var::Y);
    let c = map[1].diff(Var::X);
    let d = map[1].diff(Var::Y);
    &a * &d - &b * &c
}

fn hessian(family: &MPoly) -> MPoly {
    let fxx = family.diff(Var::X).diff(Var::X);
    let fyy = family.diff(Var::Y).diff(Var::Y);
    let fxy = family.diff(Var::X).diff(Var::Y);
    &fxx * &fyy - &fxy * &fxy
}

fn build_def(raw: RawDef) -> Result<SingularityDef> {
    let id: SingularityId = raw.label.parse().map_err(|_| Error::Catalog(format!("unknown label {}", raw.label)))?;
    let bad = |msg: String| Error::Catalog(format!("{id}: {msg}"));
    if raw.name != id.common_name() || raw.codim != id.codim() || raw.params != id.n_params() {
        return Err(bad("name, codim or params disagree with the label".into()));
    }
    let (elim_var, retained) = match raw.eliminate.as_str() {
        "x" => (Var::X, Var::Y),
        "y" => (Var::Y, Var::X),
        other => return Err(bad(format!("cannot eliminate '{other}'"))),
    };
    let p = |field: &str, terms: &[RawTerm]| parse_terms(&raw.label, field, terms);
    let family = p("family", &raw.family)?;
    let map = [p("map1", &raw.map1)?, p("map2", &raw.map2)?];
    let stored_jac = p("jacobian", &raw.jacobian)?;
    let jac_det = jacobian(&map);
    if jac_det != stored_jac {
        return Err(bad(format!("stored jacobian differs from derived {jac_det}")));
    }
    let hess_det = hessian(&family);
    let on_locus = hess_det.substitute(Var::S1, &map[0]).substitute(Var::S2, &map[1]);
    let hess_sign = if on_locus == jac_det {
        1
    } else if -on_locus.clone() == jac_det {
        -1
    } else {
        return Err(bad(format!("det Hess on the pre-image locus is {on_locus}, not ±det Jac")));
    };

    let phi = p("phi", &raw.phi)?;
    let n = id.n_images();
    if phi.degree_in(retained) != Some(n) {
        return Err(bad(format!("phi has degree {:?}, expected {n}", phi.degree_in(retained))));
    }
    if phi.degree_in(elim_var).unwrap_or(0) != 0 {
        return Err(bad("phi involves the eliminated variable".into()));
    }
    let leading_is_constant = phi
        .terms()
        .filter(|(e, _)| e[retained.index()] as usize == n)
        .all(|(e, _)| e.iter().enumerate().all(|(i, &k)| i == retained.index() || k == 0));
    if !leading_is_constant {
        return Err(bad("leading coefficient of phi depends on parameters".into()));
    }
    let multiplier = p("multiplier", &raw.multiplier)?;
    if multiplier.degree_in(retained).unwrap_or(0) > 1 {
        return Err(bad("multiplier has degree above one".into()));
    }
    Ok(SingularityDef {
        id,
        family,
        map,
        jac_det,
        hess_det,
        elim_var,
        retained,
        phi,
        back_sub_num: p("back_sub_num", &raw.back_sub_num)?,
        back_sub_den: p("back_sub_den", &raw.back_sub_den)?,
        mag_num: p("mag_num", &raw.mag_num)?,
        mag_den: p("mag_den", &raw.mag_den)?,
        multiplier,
        hess_sign,
    })
}

/// Parse and cross-check a catalog definition file.
pub fn load(src: &str) -> Result<Vec<SingularityDef>> {
    let file: RawFile = toml::from_str(src).map_err(|e| Error::Catalog(e.to_string()))?;
    let mut defs = file.singularity.into_iter().map(build_def).collect::<Result<Vec<_>>>()?;
    defs.sort_by_key(|d| d.id);
    let ids: Vec<_> = defs.iter().map(|d| d.id).collect();
    if ids != SingularityId::ALL {
        return Err(Error::Catalog(format!("expected each singularity once, found {ids:?}")));
    }
    Ok(defs)
}

fn catalog() -> &'static [SingularityDef] {
    static CATALOG: OnceLock<Vec<SingularityDef>> = OnceLock::new();
    CATALOG.get_or_init(|| load(CATALOG_SRC).expect("embedded catalog is valid"))
}

pub fn get(id: SingularityId) -> &'static SingularityDef {
    &catalog()[id as usize]
}

pub fn all() -> &'static [SingularityDef] {
    catalog()
}

fn check_params<T>(def: &SingularityDef, p: &Params<T>) -> Result<()> {
    if p.c.len() != def.id.n_params() {
        return Err(Error::Invalid(format!(
            "{} takes {} parameters, got {}",
            def.id,
            def.id.n_params(),
            p.c.len()
        )));
    }
    Ok(())
}

/// A retained-variable value together with the other coordinate.
fn point<T: Field>(def: &SingularityDef, retained: T, eliminated: T) -> (T, T) {
    match def.retained {
        Var::X => (retained, eliminated),
        _ => (eliminated, retained),
    }
}

impl SingularityDef {
    pub fn n_images(&self) -> usize {
        self.id.n_images()
    }

    fn uni<T: Field>(&self, poly: &MPoly, p: &Params<T>) -> Polynomial<T> {
        poly.to_univariate(self.retained, &p.assignment(T::zero(), T::zero()))
    }

    /// Elimination polynomial in the retained variable.
    pub fn build_phi<T: Field>(&self, p: &Params<T>) -> Result<Polynomial<T>> {
        check_params(self, p)?;
        if matches!(self.id, SingularityId::D6minus | SingularityId::D6plus) && p.s[0].is_zero() {
            return Err(Error::GuardViolation(format!("{} needs s1 ≠ 0", self.id)));
        }
        let den = self.uni(&self.back_sub_den, p);
        if den.is_zero() {
            return Err(Error::GuardViolation(format!("{}: back-substitution denominator vanishes", self.id)));
        }
        let phi = self.uni(&self.phi, p);
        if phi.deg() != Some(self.n_images()) {
            return Err(Error::GuardViolation(format!("{}: phi drops degree", self.id)));
        }
        if T::EXACT && den.deg() != Some(0) && phi.gcd(&den).value.deg() != Some(0) {
            return Err(Error::GuardViolation(format!(
                "{}: back-substitution denominator vanishes at a root",
                self.id
            )));
        }
        Ok(phi)
    }

    /// `Res_{elim}(f_1 - s_1, f_2 - s_2) = λ φ`; returns `λ`.
    pub fn verify_phi_vs_resultant(&self, p: &Params<Rational>) -> Result<Rational> {
        let phi = self.build_phi(p)?;
        let vals = p.assignment(Rational::zero(), Rational::zero());
        let eqs = [
            self.map[0].clone() - MPoly::var(Var::S1),
            self.map[1].clone() - MPoly::var(Var::S2),
        ];
        let formal = |m: &MPoly| m.degree_in(self.elim_var).unwrap_or(0);
        let a = eqs[0].to_bivariate(self.elim_var, self.retained, &vals);
        let b = eqs[1].to_bivariate(self.elim_var, self.retained, &vals);
        let res = resultant::resultant_with_degrees(&a, formal(&eqs[0]), &b, formal(&eqs[1]))
            .map_err(|_| Error::GuardViolation(format!("{}: leading coefficient vanishes", self.id)))?;
        let lambda = match (res.leading(), phi.leading()) {
            (Some(r), Some(f)) if res.deg() == phi.deg() => r / f,
            _ => return Err(Error::NotProportional(format!("{}: resultant {res} vs phi {phi}", self.id))),
        };
        if lambda.is_zero() || res != phi.scale(&lambda) {
            return Err(Error::NotProportional(format!("{}: resultant {res} vs phi {phi}", self.id)));
        }
        Ok(lambda)
    }

    /// `φ'·P - m·Q`, which must vanish identically; `𝔐 = P/Q`.
    pub fn multiplier_residual(&self, p: &Params<Rational>) -> Result<Polynomial<Rational>> {
        let phi = self.build_phi(p)?;
        let num = self.uni(&self.mag_num, p);
        let den = self.uni(&self.mag_den, p);
        let m = self.multiplier(p);
        Ok(&(&phi.derivative() * &num) - &(&m * &den))
    }

    pub fn verify_multiplier_identity(&self, p: &Params<Rational>) -> Result<()> {
        let residual = self.multiplier_residual(p)?;
        if residual.is_zero() {
            Ok(())
        } else {
            Err(Error::IdentityFailure { label: self.id.to_string(), residual: residual.to_string() })
        }
    }

    pub fn map_at<T: Field>(&self, c: &[T], x: T, y: T) -> [T; 2] {
        let vals = Params { c: c.to_vec(), s: [T::zero(), T::zero()] }.assignment(x, y);
        [self.map[0].eval(&vals), self.map[1].eval(&vals)]
    }

    pub fn grad_at<T: Field>(&self, p: &Params<T>, x: T, y: T) -> [T; 2] {
        let vals = p.assignment(x, y);
        [self.family.diff(Var::X).eval(&vals), self.family.diff(Var::Y).eval(&vals)]
    }

    /// `grad F_{c,s}(x, y) = 0` for `s := f_c(x, y)`, and not for a
    /// perturbed `s`.
    pub fn verify_grad_equivalence(&self, c: &[Rational], x: &Rational, y: &Rational) -> Result<()> {
        let s = self.map_at(c, x.clone(), y.clone());
        let p = Params::new(c.to_vec(), s);
        check_params(self, &p)?;
        let g = self.grad_at(&p, x.clone(), y.clone());
        if !(g[0].is_zero() && g[1].is_zero()) {
            return Err(Error::EquivalenceFailure(format!("{}: grad F = ({}, {}) at s = f(x, y)", self.id, g[0], g[1])));
        }
        let mut off = p.clone();
        off.s[0] += Rational::one();
        let g = self.grad_at(&off, x.clone(), y.clone());
        if g[0].is_zero() && g[1].is_zero() {
            return Err(Error::EquivalenceFailure(format!("{}: grad F vanishes off the locus", self.id)));
        }
        Ok(())
    }

    pub fn jac_at<T: Field>(&self, c: &[T], x: T, y: T) -> T {
        let vals = Params { c: c.to_vec(), s: [T::zero(), T::zero()] }.assignment(x, y);
        self.jac_det.eval(&vals)
    }

    pub fn hess_at<T: Field>(&self, p: &Params<T>, x: T, y: T) -> T {
        self.hess_det.eval(&p.assignment(x, y))
    }

    /// Checks `det Jac = ε det Hess` at each point with `s := f_c(point)`
    /// and returns the common `ε`.
    pub fn verify_det_consistency(&self, c: &[Rational], points: &[(Rational, Rational)]) -> Result<i8> {
        let mut eps: Option<i8> = None;
        for (x, y) in points {
            let s = self.map_at(c, x.clone(), y.clone());
            let p = Params::new(c.to_vec(), s);
            let j = self.jac_at(c, x.clone(), y.clone());
            let h = self.hess_at(&p, x.clone(), y.clone());
            let here = if j.is_zero() && h.is_zero() {
                continue;
            } else if j == h {
                1
            } else if j == -h.clone() {
                -1
            } else {
                return Err(Error::InconsistentSign(format!("{}: det Jac {j} vs det Hess {h}", self.id)));
            };
            if eps.is_some_and(|e| e != here) {
                return Err(Error::InconsistentSign(format!("{}: sign flips between points", self.id)));
            }
            eps = Some(here);
        }
        let eps = eps.ok_or_else(|| Error::InconsistentSign(format!("{}: no usable points", self.id)))?;
        if eps != self.hess_sign {
            return Err(Error::InconsistentSign(format!("{}: sampled ε = {eps}, catalog ε = {}", self.id, self.hess_sign)));
        }
        Ok(eps)
    }

    /// Gaussian curvature `det Hess F / (1 + |grad F|²)` of the graph of F.
    pub fn gauss_at<T: Field>(&self, p: &Params<T>, x: T, y: T) -> T {
        let g = self.grad_at(p, x.clone(), y.clone());
        let norm = T::one() + g[0].clone() * g[0].clone() + g[1].clone() * g[1].clone();
        self.hess_at(p, x, y) / norm
    }

    /// Full pre-image `(x, y)` from a root `t` of φ.
    pub fn back_substitute<T: Field>(&self, p: &Params<T>, t: T, tol: f64) -> Result<(T, T)> {
        let vals = match self.retained {
            Var::X => p.assignment(t.clone(), T::zero()),
            _ => p.assignment(T::zero(), t.clone()),
        };
        let den = self.back_sub_den.eval(&vals);
        let mag = den.magnitude();
        if den.is_zero() || mag < tol {
            return Err(Error::BackSubSingular { value: mag });
        }
        let other = self.back_sub_num.eval(&vals) / den;
        Ok(point(self, t, other))
    }

    /// `𝔐 = 1 / det Jac` as a rational function of the retained variable.
    pub fn magnification<T: Field>(&self, p: &Params<T>) -> Result<RationalFunc<T>> {
        check_params(self, p)?;
        RationalFunc::new(self.uni(&self.mag_num, p), self.uni(&self.mag_den, p))
    }

    pub fn multiplier<T: Field>(&self, p: &Params<T>) -> Polynomial<T> {
        self.uni(&self.multiplier, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn ids() {
        for id in SingularityId::ALL {
            assert_eq!(id.n_images(), id.codim() + 1);
            assert_eq!(id.label().parse::<SingularityId>().unwrap(), id);
            assert_eq!(id.common_name().parse::<SingularityId>().unwrap(), id);
        }
        assert_eq!("d4+".parse::<SingularityId>().unwrap(), SingularityId::D4plus);
        assert_eq!("D6-".parse::<SingularityId>().unwrap(), SingularityId::D6minus);
        assert!("E7".parse::<SingularityId>().is_err());
        let images: Vec<_> = SingularityId::ALL.iter().map(|i| i.n_images()).collect();
        assert_eq!(images, [2, 3, 4, 4, 4, 5, 5, 6, 6, 6, 6]);
        let params: Vec<_> = SingularityId::ALL.iter().map(|i| i.n_params()).collect();
        assert_eq!(params, [0, 0, 1, 1, 1, 2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn embedded_catalog_loads() {
        assert_eq!(all().len(), 11);
        for def in all() {
            assert_eq!(get(def.id).id, def.id);
            assert!(def.hess_sign == 1 || def.hess_sign == -1);
        }
    }

    #[test]
    fn induced_maps() {
        let x = || MPoly::var(Var::X);
        let y = || MPoly::var(Var::Y);
        let c = || MPoly::var(Var::C1);
        let k = |v: i64| MPoly::constant(q(v));
        assert_eq!(get(SingularityId::A2).map, [x(), &y() * &y()]);
        let d4p = get(SingularityId::D4plus);
        assert_eq!(d4p.map[0], &k(-3) * &(&x() * &x()) - &c() * &y());
        assert_eq!(d4p.map[1], &k(-3) * &(&y() * &y()) - &c() * &x());
    }

    #[test]
    fn phi_examples() {
        let a2 = get(SingularityId::A2);
        let phi = a2.build_phi(&Params::new(vec![], [q(0), q(1)])).unwrap();
        assert_eq!(phi, Polynomial::from_i64(&[-1, 0, 1]));

        let d4p = get(SingularityId::D4plus);
        let phi = d4p.build_phi(&Params::new(vec![q(1)], [q(1), q(1)])).unwrap();
        assert_eq!(phi, Polynomial::from_i64(&[-4, -1, -18, 0, -27]));
        assert!(matches!(
            d4p.build_phi(&Params::new(vec![q(0)], [q(1), q(1)])),
            Err(Error::GuardViolation(_))
        ));

        let (c1, c2, s1, s2) = (3, -5, 7, 2);
        let phi = get(SingularityId::A5).build_phi(&Params::new(vec![q(c1), q(c2)], [q(s1), q(s2)])).unwrap();
        assert_eq!(phi, Polynomial::from_i64(&[-s1, -2 * s2, -3 * c2, -4 * c1, 0, -6]));

        let d6 = get(SingularityId::D6minus);
        assert!(matches!(
            d6.build_phi(&Params::new(vec![q(1), q(1), q(1)], [q(0), q(1)])),
            Err(Error::GuardViolation(_))
        ));
        assert!(matches!(
            a2.build_phi(&Params::new(vec![q(1)], [q(0), q(1)])),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn leading_coefficients() {
        let expected = [1, 1, 1, 108, -27, -6, -16, -7, -48, 20, -20];
        for (def, lead) in all().iter().zip(expected) {
            let p = Params::new(vec![q(1); def.id.n_params()], [q(1), q(2)]);
            let phi = def.build_phi(&p).unwrap();
            assert_eq!(phi.leading().unwrap(), &q(lead), "{}", def.id);
        }
    }

    #[test]
    fn resultant_proportionality() {
        let a2 = get(SingularityId::A2);
        let lambda = a2.verify_phi_vs_resultant(&Params::new(vec![], [q(3), q(-2)])).unwrap();
        assert_eq!(lambda, q(1));
        let d4p = get(SingularityId::D4plus);
        let lambda = d4p.verify_phi_vs_resultant(&Params::new(vec![q(1)], [q(1), q(1)])).unwrap();
        assert!(!lambda.is_zero());
    }

    #[test]
    fn grad_equivalence_examples() {
        let a2 = get(SingularityId::A2);
        assert_eq!(a2.map_at(&[], q(1), q(2)), [q(1), q(4)]);
        a2.verify_grad_equivalence(&[], &q(1), &q(2)).unwrap();
        let a3 = get(SingularityId::A3);
        assert_eq!(a3.map_at(&[], q(1), q(1)), [q(1), q(2)]);
        a3.verify_grad_equivalence(&[], &q(1), &q(1)).unwrap();
    }

    #[test]
    fn hessian_sign_of_fold_and_cusp() {
        let a2 = get(SingularityId::A2);
        assert_eq!(a2.hess_sign, -1);
        let p = Params::new(vec![], [q(3), q(4)]);
        assert_eq!(a2.gauss_at(&p, q(3), q(2)), q(-4));
        assert_eq!(a2.verify_det_consistency(&[], &[(q(3), q(2)), (q(-1), q(5))]).unwrap(), -1);
        assert_eq!(get(SingularityId::A3).hess_sign, -1);
    }

    #[test]
    fn back_substitution() {
        // D4minus: y = s2 / (6x - 2c)
        let d4m = get(SingularityId::D4minus);
        let p = Params::new(vec![q(1)], [q(2), q(8)]);
        assert_eq!(d4m.back_substitute(&p, q(1), 0.0).unwrap(), (q(1), q(2)));
        assert!(matches!(
            d4m.back_substitute(&p, rational(1, 3), 0.0),
            Err(Error::BackSubSingular { .. })
        ));
        // D6minus: x = -s1 / (2y)
        let d6 = get(SingularityId::D6minus);
        let p = Params::new(vec![q(0), q(0), q(0)], [q(4), q(0)]);
        assert_eq!(d6.back_substitute(&p, q(2), 0.0).unwrap(), (q(-1), q(2)));
        // A4: y = s2
        let a4 = get(SingularityId::A4);
        let p = Params::new(vec![q(1)], [q(0), q(5)]);
        assert_eq!(a4.back_substitute(&p, q(7), 0.0).unwrap(), (q(7), q(5)));
    }

    #[test]
    fn multipliers() {
        let p = |n: usize| Params::new(vec![rational(1, 2); n], [rational(3, 4), rational(-5, 8)]);
        for def in all() {
            def.verify_multiplier_identity(&p(def.id.n_params())).unwrap();
        }
        let d4m = get(SingularityId::D4minus);
        assert_eq!(d4m.multiplier(&Params::new(vec![q(3)], [q(0), q(0)])), Polynomial::from_i64(&[6, -6]));
        let d6p = get(SingularityId::D6plus);
        assert_eq!(d6p.multiplier(&p(3)), Polynomial::from_i64(&[0, -2]));
    }

    #[test]
    fn rejects_bad_catalog() {
        let broken = CATALOG_SRC.replacen("jacobian = [[\"2\", 0, 1", "jacobian = [[\"3\", 0, 1", 1);
        assert!(matches!(load(&broken), Err(Error::Catalog(_))));
        assert!(matches!(load("singularity = []"), Err(Error::Catalog(_))));
    }
}
