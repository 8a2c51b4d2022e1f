//! Pre-images, signed magnifications and their sums for one source point.

use num_complex::Complex64;
use num_traits::Zero;

use crate::catalog::{Params, SingularityDef, SingularityId};
use crate::coset::euler_trace;
use crate::poly::{discriminant, roots, Field, Polynomial, Rational, RootConfig, RootSet};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Imaginary part, relative to `max(1, |z|)`, below which a root is real.
    pub reality_tol: f64,
    /// Lower bound on `|disc φ| / max|a_i|^{2n-2}`, which is invariant under
    /// scaling φ.
    pub caustic_tol: f64,
    /// Lower bound on the smallest root distance relative to `max(1, max|root|)`.
    pub separation_tol: f64,
    pub sum_tol: f64,
    /// Bound on `|f_c(point) - s|` relative to `1 + |s|`.
    pub preimage_tol: f64,
    /// Smallest admissible back-substitution denominator.
    pub backsub_tol: f64,
    /// Agreement of `1/det Jac` with `ε/det Hess` at real pre-images.
    pub consistency_tol: f64,
    pub roots: RootConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            reality_tol: 1e-7,
            caustic_tol: 1e-8,
            separation_tol: 1e-7,
            sum_tol: 1e-9,
            preimage_tol: 1e-8,
            backsub_tol: 1e-9,
            consistency_tol: 1e-10,
            roots: RootConfig::default(),
        }
    }
}

impl SolverConfig {
    pub const NAMES: [&'static str; 8] = [
        "reality_tol",
        "caustic_tol",
        "separation_tol",
        "sum_tol",
        "preimage_tol",
        "backsub_tol",
        "consistency_tol",
        "root_residual_tol",
    ];

    /// Override one tolerance by name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Invalid(format!("tolerance {name} must be positive, got {value}")));
        }
        let slot = match name {
            "reality_tol" => &mut self.reality_tol,
            "caustic_tol" => &mut self.caustic_tol,
            "separation_tol" => &mut self.separation_tol,
            "sum_tol" => &mut self.sum_tol,
            "preimage_tol" => &mut self.preimage_tol,
            "backsub_tol" => &mut self.backsub_tol,
            "consistency_tol" => &mut self.consistency_tol,
            "root_residual_tol" => &mut self.roots.root_residual_tol,
            _ => return Err(Error::Invalid(format!("unknown tolerance '{name}'"))),
        };
        *slot = value;
        Ok(())
    }

    pub fn entries(&self) -> [(&'static str, f64); 8] {
        [
            ("reality_tol", self.reality_tol),
            ("caustic_tol", self.caustic_tol),
            ("separation_tol", self.separation_tol),
            ("sum_tol", self.sum_tol),
            ("preimage_tol", self.preimage_tol),
            ("backsub_tol", self.backsub_tol),
            ("consistency_tol", self.consistency_tol),
            ("root_residual_tol", self.roots.root_residual_tol),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreImage {
    pub point: [Complex64; 2],
    pub is_real: bool,
    /// `max_k |f_k(point) - s_k|`
    pub residual: f64,
}

/// Roots of a non-caustic φ together with its conditioning numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInfo {
    pub roots: RootSet,
    pub disc: Complex64,
    /// Discriminant normalised as described on [`SolverConfig::caustic_tol`].
    pub disc_metric: f64,
}

impl RootInfo {
    pub fn count_real(&self, reality_tol: f64) -> usize {
        self.roots.roots.iter().filter(|z| is_real(**z, reality_tol)).count()
    }
}

fn is_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol * z.norm().max(1.0)
}

/// Roots of φ with discriminant and separation measured, without rejecting.
pub fn analyse(phi: &Polynomial<Complex64>, cfg: &SolverConfig) -> Result<RootInfo> {
    let n = phi.deg().unwrap_or(0);
    let roots = roots(phi, &cfg.roots)?;
    let disc = discriminant(phi)?;
    let log_scale = (2 * n - 2) as f64 * phi.max_coeff().ln();
    let disc_metric = (disc.norm().ln() - log_scale).exp();
    Ok(RootInfo { roots, disc, disc_metric })
}

/// As [`analyse`], failing with `NearCaustic` when φ is too close to a
/// repeated root.
pub fn analyse_noncaustic(phi: &Polynomial<Complex64>, cfg: &SolverConfig) -> Result<RootInfo> {
    let info = analyse(phi, cfg)?;
    if !(info.disc_metric >= cfg.caustic_tol) {
        return Err(Error::NearCaustic(format!("normalised discriminant {:.3e}", info.disc_metric)));
    }
    if info.roots.min_separation < cfg.separation_tol * info.roots.scale() {
        return Err(Error::NearCaustic(format!("root separation {:.3e}", info.roots.min_separation)));
    }
    Ok(info)
}

pub fn preimages(def: &SingularityDef, p: &Params<Complex64>, cfg: &SolverConfig) -> Result<Vec<PreImage>> {
    let phi = def.build_phi(p)?;
    let info = analyse_noncaustic(&phi, cfg)?;
    preimages_from_roots(def, p, &info.roots.roots, cfg)
}

fn preimages_from_roots(
    def: &SingularityDef,
    p: &Params<Complex64>,
    roots: &[Complex64],
    cfg: &SolverConfig,
) -> Result<Vec<PreImage>> {
    roots
        .iter()
        .map(|&t| {
            let (x, y) = def.back_substitute(p, t, cfg.backsub_tol)?;
            let f = def.map_at(&p.c, x, y);
            let residual = (f[0] - p.s[0]).norm().max((f[1] - p.s[1]).norm());
            Ok(PreImage { point: [x, y], is_real: is_real(x, cfg.reality_tol) && is_real(y, cfg.reality_tol), residual })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MagReport {
    pub id: SingularityId,
    pub c: Vec<f64>,
    pub s: [f64; 2],
    pub preimages: Vec<PreImage>,
    /// `1 / det Jac f_c` at each pre-image.
    pub mags: Vec<Complex64>,
    pub sum_all: Complex64,
    pub sum_real: Complex64,
    /// `|sum_all| / Σ|𝔐_i|`
    pub rel_residual_all: f64,
    /// `|sum_real| / Σ|𝔐_i|`, only when every pre-image is real.
    pub rel_residual_real: Option<f64>,
    pub n_real: usize,
    pub disc_metric: f64,
    /// Largest relative gap between `1/det Jac` and `ε/det Hess` over real
    /// pre-images.
    pub max_consistency_gap: f64,
    /// Names of the checks that failed; empty when within tolerance.
    pub guards: Vec<String>,
}

impl MagReport {
    pub fn within_tolerance(&self) -> bool {
        self.guards.is_empty()
    }

    /// `ToleranceExceeded` for the first failed check.
    pub fn check(&self, cfg: &SolverConfig) -> Result<()> {
        let (what, value, tol) = match self.guards.first().map(String::as_str) {
            None => return Ok(()),
            Some("sum_all") => ("sum_all", self.rel_residual_all, cfg.sum_tol),
            Some("sum_real") => ("sum_real", self.rel_residual_real.unwrap_or(f64::NAN), cfg.sum_tol),
            Some("preimage_residual") => ("preimage_residual", self.max_residual(), cfg.preimage_tol),
            Some(_) => ("magnification_consistency", self.max_consistency_gap, cfg.consistency_tol),
        };
        Err(Error::ToleranceExceeded { what: what.into(), value, tol })
    }

    pub fn max_residual(&self) -> f64 {
        self.preimages.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

fn real_parts(p: &Params<Complex64>) -> (Vec<f64>, [f64; 2]) {
    (p.c.iter().map(|v| v.re).collect(), [p.s[0].re, p.s[1].re])
}

pub fn magnification_sum(def: &SingularityDef, p: &Params<Complex64>, cfg: &SolverConfig) -> Result<MagReport> {
    let phi = def.build_phi(p)?;
    let info = analyse_noncaustic(&phi, cfg)?;
    let preimages = preimages_from_roots(def, p, &info.roots.roots, cfg)?;

    let mut mags = Vec::with_capacity(preimages.len());
    let mut max_consistency_gap: f64 = 0.0;
    for pre in &preimages {
        let [x, y] = pre.point;
        let jac = def.jac_at(&p.c, x, y);
        if jac.is_zero() {
            return Err(Error::NearCaustic("det Jac vanishes at a pre-image".into()));
        }
        let mag = jac.inv();
        if pre.is_real {
            let hess = def.hess_at(p, x, y);
            let alt = Complex64::from(f64::from(def.hess_sign)) / hess;
            max_consistency_gap = max_consistency_gap.max((mag - alt).norm() / mag.norm());
        }
        mags.push(mag);
    }

    let total: f64 = mags.iter().map(|m| m.norm()).sum();
    let sum_all: Complex64 = mags.iter().sum();
    let sum_real: Complex64 = mags.iter().zip(&preimages).filter(|(_, p)| p.is_real).map(|(m, _)| m).sum();
    let n_real = preimages.iter().filter(|p| p.is_real).count();
    let rel_residual_all = sum_all.norm() / total;
    let rel_residual_real = (n_real == def.n_images()).then(|| sum_real.norm() / total);

    let scale = 1.0 + p.s[0].norm().hypot(p.s[1].norm());
    let mut guards = Vec::new();
    if !(rel_residual_all <= cfg.sum_tol) {
        guards.push("sum_all".to_string());
    }
    if rel_residual_real.is_some_and(|r| !(r <= cfg.sum_tol)) {
        guards.push("sum_real".to_string());
    }
    if preimages.iter().any(|pre| !(pre.residual <= cfg.preimage_tol * scale)) {
        guards.push("preimage_residual".to_string());
    }
    if !(max_consistency_gap <= cfg.consistency_tol) {
        guards.push("magnification_consistency".to_string());
    }

    let (c, s) = real_parts(p);
    Ok(MagReport {
        id: def.id,
        c,
        s,
        preimages,
        mags,
        sum_all,
        sum_real,
        rel_residual_all,
        rel_residual_real,
        n_real,
        disc_metric: info.disc_metric,
        max_consistency_gap,
        guards,
    })
}

/// The magnification sum computed over numerical roots and, independently,
/// as an exact Euler trace in `Q[t]/(φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceCheck {
    pub numeric: Complex64,
    pub algebraic: Rational,
    /// `|numeric - algebraic| / Σ|𝔐_i|`
    pub gap: f64,
}

pub fn trace_crosscheck(def: &SingularityDef, p: &Params<Rational>, cfg: &SolverConfig) -> Result<TraceCheck> {
    let algebraic = exact_trace(def, p)?;
    let report = magnification_sum(def, &p.map(Field::to_complex), cfg)?;
    let total: f64 = report.mags.iter().map(|m| m.norm()).sum();
    let gap = (report.sum_all - algebraic.to_complex()).norm() / total;
    Ok(TraceCheck { numeric: report.sum_all, algebraic, gap })
}

/// `euler_trace(𝔐, φ)` over the rationals.
pub fn exact_trace(def: &SingularityDef, p: &Params<Rational>) -> Result<Rational> {
    let phi = def.build_phi(p)?;
    euler_trace(&def.magnification(p)?, &phi)
}
