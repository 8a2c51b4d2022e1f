use num_traits::Zero;

use super::{Field, Polynomial};
use crate::{Error, Result};

/// The unique polynomial of degree `< points.len()` through all `(node, value)`
/// pairs, built from Newton divided differences.
pub fn interpolate<T: Field>(points: &[(T, T)]) -> Result<Polynomial<T>> {
    let n = points.len();
    for i in 0..n {
        for j in 0..i {
            if (points[i].0.clone() - points[j].0.clone()).is_zero() {
                return Err(Error::DuplicateNodes);
            }
        }
    }
    let nodes: Vec<T> = points.iter().map(|p| p.0.clone()).collect();
    let mut dd: Vec<T> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (nodes[i].clone() - nodes[i - level].clone());
        }
    }
    // Nested form: dd[n-1] (x - x_{n-2}) + dd[n-2] ... expanded from the inside out.
    let mut poly = Polynomial::zero();
    for i in (0..n).rev() {
        let linear = Polynomial::new(vec![-nodes[i].clone(), T::one()]);
        poly = &(&poly * &linear) + &Polynomial::constant(dd[i].clone());
    }
    Ok(poly)
}
