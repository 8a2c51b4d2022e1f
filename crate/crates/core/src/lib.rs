//! Coset polynomial algebra and magnification zero-sum verification for the
//! generic caustic singularities of codimension one through five.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: dense univariate polynomials over exact rationals or complex
//!   floats, with division, gcd, roots, resultants and interpolation.
//! * [`coset`]: unique representatives in `K[x]/(φ)`, the coefficient table
//!   for `φ'·x^k`, Newton sums and the Euler trace.
//! * [`catalog`]: the eleven singularity normal forms, loaded from a single
//!   definition file and checked against their exact identities.
//! * [`solver`]: pre-images, signed magnifications and their sums.
//! * [`scanner`]: source-plane scans, caustic extraction and maximal-image
//!   region search.

pub mod catalog;
pub mod coset;
mod error;
pub mod format;
pub mod poly;
pub mod sampling;
pub mod scanner;
pub mod solver;

pub use error::{Error, Result};
pub use poly::{Field, Polynomial, Rational, RationalFunc, Ring};
