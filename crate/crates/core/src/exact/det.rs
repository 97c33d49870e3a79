//! Determinants, minors and rank by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{IndexSubset, Matrix};
use super::ops::OpTally;
use super::scalar::{one, Scalar};
use crate::error::{Error, Result};

/// Scales each row to integers; returns the integer rows and the product of
/// the row multipliers.
fn clear_denominators(m: &Matrix, ops: &mut OpTally) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let l = (0..m.cols()).fold(BigInt::one(), |acc, j| acc.lcm(m.get(i, j).denom()));
            let row = (0..m.cols())
                .map(|j| {
                    let e = m.get(i, j);
                    if l.is_one() {
                        e.numer().clone()
                    } else {
                        ops.mul(1);
                        e.numer() * (&l / e.denom())
                    }
                })
                .collect();
            scale *= l;
            row
        })
        .collect();
    (rows, scale)
}

/// Integer Bareiss elimination. Pivot: first row at or below the diagonal
/// with a nonzero entry in the current column.
fn bareiss(mut a: Vec<Vec<BigInt>>, ops: &mut OpTally) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            ops.mul(2 * (n - k - 1) as u64);
            ops.add((n - k - 1) as u64);
            if !prev.is_one() {
                ops.mul((n - k - 1) as u64);
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub(crate) fn det_counted(m: &Matrix, ops: &mut OpTally) -> Result<Scalar> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let (rows, scale) = clear_denominators(m, ops);
    let d = bareiss(rows, ops);
    if !scale.is_one() {
        ops.mul(1);
    }
    Ok(Scalar::new(d, scale))
}

/// Exact determinant of a square matrix.
pub fn det_exact(m: &Matrix) -> Result<Scalar> {
    det_counted(m, &mut OpTally::new())
}

/// The minor on rows `rows` and columns `cols` (1-based); the empty minor is 1.
pub fn minor(m: &Matrix, rows: &IndexSubset, cols: &IndexSubset) -> Result<Scalar> {
    if rows.len() != cols.len() {
        return Err(Error::Index(format!(
            "minor needs |I| = |S|, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    rows.check_within(m.rows())?;
    cols.check_within(m.cols())?;
    if rows.is_empty() {
        return Ok(one());
    }
    det_exact(&m.select(&rows.zero_based(), &cols.zero_based()))
}

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    let (mut a, _) = clear_denominators(m, &mut OpTally::new());
    let (nr, nc) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        let pivot_row = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let mut g = BigInt::zero();
            for j in c..nc {
                row[j] = &row[j] * &pivot - &f * &pivot_row[j];
                g = g.gcd(&row[j]);
            }
            if !g.is_zero() && !g.is_one() {
                for v in row[c..].iter_mut() {
                    *v = &*v / &g;
                }
            }
        }
        r += 1;
    }
    r
}

/// Sign of a permutation given as images of `0..n`.
pub(crate) fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio, zero};
    use proptest::prelude::*;

    /// Laplace expansion along the first row; test oracle.
    fn cofactor_det(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 0 {
            return one();
        }
        let rest: Vec<usize> = (1..n).collect();
        (0..n).fold(zero(), |acc, j| {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = m.get(0, j) * cofactor_det(&m.select(&rest, &cols));
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    fn rational_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-9i64..10, 1i64..5), n * n).prop_map(move |v| {
            Matrix::new(n, n, v.into_iter().map(|(p, q)| ratio(p, q)).collect()).unwrap()
        })
    }

    #[test]
    fn identity_and_small() {
        assert_eq!(det_exact(&Matrix::identity(5)).unwrap(), int(1));
        let m = Matrix::from_i64(2, 2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), int(-2));
        assert_eq!(det_exact(&Matrix::zeros(0, 0)).unwrap(), int(1));
    }

    #[test]
    fn non_square_is_dimension_error() {
        assert!(matches!(
            det_exact(&Matrix::zeros(2, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn pivoting_through_zero_leading_entries() {
        let m = Matrix::from_i64(3, 3, &[0, 0, 1, 0, 2, 0, 3, 0, 0]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), int(-6));
        let singular = Matrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]).unwrap();
        assert_eq!(det_exact(&singular).unwrap(), int(0));
    }

    #[test]
    fn minors() {
        let m = Matrix::from_i64(2, 2, &[1, 2, 3, 4]).unwrap();
        let e = IndexSubset::empty();
        assert_eq!(minor(&m, &e, &e).unwrap(), int(1));
        let one_ = IndexSubset::new(vec![1]).unwrap();
        let two = IndexSubset::new(vec![2]).unwrap();
        assert_eq!(minor(&m, &one_, &two).unwrap(), int(2));
        let both = IndexSubset::new(vec![1, 2]).unwrap();
        assert_eq!(minor(&m, &both, &both).unwrap(), int(-2));
        assert!(minor(&m, &both, &one_).is_err());
        assert!(minor(&m, &IndexSubset::new(vec![3]).unwrap(), &one_).is_err());
    }

    #[test]
    fn rank_cases() {
        let m = Matrix::from_i64(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1]).unwrap();
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&Matrix::identity(4)), 4);
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn matches_cofactor_oracle(m in (1usize..=7).prop_flat_map(rational_matrix)) {
            prop_assert_eq!(det_exact(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn rank_of_square_detects_singularity(m in (1usize..=5).prop_flat_map(rational_matrix)) {
            let full = rank(&m) == m.rows();
            prop_assert_eq!(full, !det_exact(&m).unwrap().is_zero());
        }
    }
}
