//! Exact rational arithmetic and the determinant, minor and Pfaffian
//! primitives the rest of the crate is built on.

pub mod det;
pub mod matrix;
pub mod ops;
pub mod pfaffian;
pub mod scalar;

pub use det::{det_exact, minor, rank};
pub use matrix::{IndexSubset, Matrix, SkewMatrix, SymMatrix};
pub use ops::OpTally;
pub use pfaffian::{pfaffian, sgn_index, sub_pfaffian, tilde};
pub use scalar::{format_scalar, parse_scalar, Scalar};
