//! Seeded random inputs shared by tests, the self-test and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::scalar::{ratio, Scalar};
use crate::exact::{Matrix, SkewMatrix, SymMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p` in `-5..=5`, `q` in `1..=4`.
pub fn small_rational(rng: &mut impl Rng) -> Scalar {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng))
}

pub fn skew(rng: &mut impl Rng, n: usize) -> SkewMatrix {
    SkewMatrix::from_upper_fn(n, |_, _| small_rational(rng))
}

pub fn sym(rng: &mut impl Rng, n: usize) -> SymMatrix {
    SymMatrix::from_upper_fn(n, |_, _| small_rational(rng))
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| small_rational(rng)).collect()
}
