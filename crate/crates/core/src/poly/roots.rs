//! All complex roots of a univariate polynomial by Aberth-Ehrlich
//! simultaneous iteration, followed by per-root Newton polishing.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Field, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RootConfig {
    /// Accepted scaled residual `|φ(z)| / (max|a_i| · max(1,|z|)^n)`.
    pub root_residual_tol: f64,
    /// `|a_n| < leading_tol · max|a_i|` is treated as a dropped degree.
    pub leading_tol: f64,
    pub max_iter: usize,
    pub polish_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            root_residual_tol: 1e-10,
            leading_tol: 1e-12,
            max_iter: 500,
            polish_iter: 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Scaled residual per root, see [`RootConfig::root_residual_tol`].
    pub residuals: Vec<f64>,
    /// Smallest pairwise distance; infinite for a single root.
    pub min_separation: f64,
}

impl RootSet {
    /// Largest root modulus, at least one.
    pub fn scale(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }
}

pub fn roots<T: Field>(phi: &Polynomial<T>, cfg: &RootConfig) -> Result<RootSet> {
    let p = phi.to_complex();
    let n = match p.deg() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::DegreeTooLow { degree: p.degree(), min: 1 }),
    };
    let scale = p.max_coeff();
    if p.coeffs()[n].norm() < cfg.leading_tol * scale {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let dp = p.derivative();

    let mut z = initial_guesses(&p);
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let v = p.eval(&z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / dp.eval(&z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }

    let residual = |w: Complex64| p.eval(&w).norm() / (scale * w.norm().max(1.0).powi(n as i32));
    let mut residuals = Vec::with_capacity(n);
    for zi in z.iter_mut() {
        let mut best = *zi;
        let mut best_res = residual(best);
        let mut cur = best;
        for _ in 0..cfg.polish_iter {
            let d = dp.eval(&cur);
            if d.norm() == 0.0 {
                break;
            }
            let next = cur - p.eval(&cur) / d;
            if !next.is_finite() {
                break;
            }
            let r = residual(next);
            let moved = (next - cur).norm();
            cur = next;
            if r < best_res {
                best = cur;
                best_res = r;
            }
            if best_res == 0.0 || moved <= f64::EPSILON * cur.norm().max(1.0) {
                break;
            }
        }
        *zi = best;
        residuals.push(best_res);
    }

    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if !(worst <= cfg.root_residual_tol) {
        return Err(Error::NonConvergence { iterations, residual: worst });
    }
    let mut min_separation = f64::INFINITY;
    for i in 0..n {
        for j in 0..i {
            min_separation = min_separation.min((z[i] - z[j]).norm());
        }
    }
    Ok(RootSet { roots: z, residuals, min_separation })
}

/// Points on a circle about the root centroid, with radius from the
/// Fujiwara-style bound `max |a_{n-k}/a_n|^{1/k}`.
fn initial_guesses(p: &Polynomial<Complex64>) -> Vec<Complex64> {
    let n = p.deg().expect("degree checked");
    let a = p.coeffs();
    let lead = a[n];
    let center = -a[n - 1] / (lead * n as f64);
    let radius = (1..=n)
        .map(|k| (a[n - k] / lead).norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    (0..n)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect()
}
