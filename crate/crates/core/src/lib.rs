//! Exact evaluation of exponential-dimension tensor pairings in polynomial
//! time, with brute-force oracles for every fast path.
//!
//! * [`exact`]: rational scalars, determinants, minors, Pfaffians.
//! * [`cominuscule`]: big-cell coordinate vectors (minors / sub-Pfaffians /
//!   monomials) and their naive and fast pairings.
//! * [`holographic`]: #NAE counting as a tensor contraction, the Hadamard basis
//!   change and local sub-Pfaffian fits.
//! * [`fkt`]: perfect matchings of embedded planar graphs via Kasteleyn
//!   orientations.
//! * [`det_perm`]: permanents, the 5x5 determinantal representation of
//!   `x1x2x3 + x4x5x6`, and Taylor coefficients of the determinant hypersurface.
//! * [`join`]: joins, multiplicative joins, circuit normalization and
//!   Terracini ranks.

pub mod error;
pub mod exact;
pub mod poly;
pub mod sampling;
pub mod cominuscule;
pub mod holographic;
pub mod fkt;
pub mod det_perm;
pub mod join;
pub mod selftest;
pub mod cli;

pub use error::{Error, Result};
