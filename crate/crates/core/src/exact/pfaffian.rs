//! Pfaffians, sub-Pfaffians and the sign twist relating `z` and `z̃`.

use num_traits::Zero;

use super::matrix::{IndexSubset, SkewMatrix};
use super::ops::OpTally;
use super::scalar::{one, sign_pow, zero, Scalar};
use crate::error::{Error, Result};

/// Pfaffian by skew-symmetric elimination; `Pf(Z)^2 = det(Z)`, zero for odd
/// dimension.
pub fn pfaffian(z: &SkewMatrix) -> Scalar {
    pfaffian_counted(z, &mut OpTally::new())
}

pub(crate) fn pfaffian_counted(z: &SkewMatrix, ops: &mut OpTally) -> Scalar {
    let n = z.dim();
    match n {
        0 => one(),
        _ if n % 2 == 1 => zero(),
        2 => z.get(0, 1),
        4 => {
            ops.mul(3);
            ops.add(2);
            z.get(0, 1) * z.get(2, 3) - z.get(0, 2) * z.get(1, 3) + z.get(0, 3) * z.get(1, 2)
        }
        _ => eliminate(z, ops),
    }
}

fn eliminate(z: &SkewMatrix, ops: &mut OpTally) -> Scalar {
    let n = z.dim();
    let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| z.get(i, j)).collect()).collect();
    let mut pf = one();
    let mut k = 0;
    while k < n {
        // first nonzero entry of row k to the right of the diagonal
        let Some(p) = (k + 1..n).find(|&j| !m[k][j].is_zero()) else {
            return zero();
        };
        if p != k + 1 {
            m.swap(p, k + 1);
            for row in m.iter_mut() {
                row.swap(p, k + 1);
            }
            pf = -pf;
        }
        let pivot = m[k][k + 1].clone();
        pf *= &pivot;
        ops.mul(1);
        if k + 2 < n {
            let scaled: Vec<Scalar> = (k + 2..n).map(|j| &m[k][j] / &pivot).collect();
            ops.mul((n - k - 2) as u64);
            for i in k + 2..n {
                for j in i + 1..n {
                    let delta = &m[k + 1][i] * &scaled[j - k - 2] - &scaled[i - k - 2] * &m[k + 1][j];
                    let v = &m[i][j] + delta;
                    m[j][i] = -v.clone();
                    m[i][j] = v;
                }
                let cnt = (n - i - 1) as u64;
                ops.mul(2 * cnt);
                ops.add(2 * cnt);
            }
        }
        k += 2;
    }
    pf
}

/// Pfaffian of the principal submatrix on `idx` (1-based); `Pf_∅ = 1`.
pub fn sub_pfaffian(z: &SkewMatrix, idx: &IndexSubset) -> Result<Scalar> {
    if idx.len() % 2 == 1 {
        return Err(Error::Index(format!(
            "sub-Pfaffian needs an even index set, got {} indices",
            idx.len()
        )));
    }
    idx.check_within(z.dim())?;
    Ok(pfaffian(&z.principal(&idx.zero_based())))
}

/// `(-1)^(σ(I) + |I|/2)` with `σ(I)` the sum of the (1-based) indices.
pub fn sgn_index(idx: &IndexSubset) -> Result<Scalar> {
    if idx.len() % 2 == 1 {
        return Err(Error::Index("sgn(I) is defined for even |I| only".into()));
    }
    let sigma: usize = idx.indices().iter().sum();
    Ok(sign_pow(sigma + idx.len() / 2))
}

/// Entrywise twist `z̃_ij = (-1)^(i+j+1) z_ij` (1-based `i`, `j`).
pub fn tilde(z: &SkewMatrix) -> SkewMatrix {
    // 0-based i + j has the same parity as the 1-based i + j; add 1.
    SkewMatrix::from_upper_fn(z.dim(), |i, j| sign_pow(i + j + 1) * z.get(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det::det_exact;
    use crate::exact::scalar::{int, ratio};
    use itertools::Itertools;
    use proptest::prelude::*;

    /// Signed sum over perfect matchings; test oracle.
    fn matching_sum(z: &SkewMatrix, idx: &[usize]) -> Scalar {
        if idx.is_empty() {
            return one();
        }
        if idx.len() % 2 == 1 {
            return zero();
        }
        let first = idx[0];
        (1..idx.len()).fold(zero(), |acc, k| {
            let rest: Vec<usize> = idx[1..k].iter().chain(&idx[k + 1..]).copied().collect();
            let term = z.get(first, idx[k]) * matching_sum(z, &rest);
            if k % 2 == 1 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    fn skew(n: usize) -> impl Strategy<Value = SkewMatrix> {
        proptest::collection::vec((-6i64..7, 1i64..4), n * n.saturating_sub(1) / 2).prop_map(move |v| {
            let mut it = v.into_iter();
            SkewMatrix::from_upper_fn(n, |_, _| {
                let (p, q) = it.next().unwrap();
                ratio(p, q)
            })
        })
    }

    #[test]
    fn base_cases() {
        let mut z = SkewMatrix::zeros(2);
        z.set(0, 1, int(7));
        assert_eq!(pfaffian(&z), int(7));
        assert_eq!(pfaffian(&SkewMatrix::from_upper_fn(5, |i, j| int((i * 3 + j) as i64))), int(0));
        assert_eq!(pfaffian(&SkewMatrix::zeros(0)), int(1));
    }

    #[test]
    fn four_by_four_formula() {
        let z = SkewMatrix::from_upper_fn(4, |i, j| int((1 + i * 4 + j) as i64));
        // z12 z34 - z13 z24 + z14 z23
        let expect = z.get(0, 1) * z.get(2, 3) - z.get(0, 2) * z.get(1, 3) + z.get(0, 3) * z.get(1, 2);
        assert_eq!(pfaffian(&z), expect);
        assert_eq!(pfaffian(&z), matching_sum(&z, &[0, 1, 2, 3]));
    }

    #[test]
    fn elimination_needs_pivot_swaps() {
        // z12 = 0 forces a swap at the first step
        let z = SkewMatrix::from_upper_fn(6, |i, j| if (i, j) == (0, 1) { int(0) } else { int((i + 2 * j) as i64 - 4) });
        assert_eq!(pfaffian(&z), matching_sum(&z, &(0..6).collect::<Vec<_>>()));
    }

    #[test]
    fn sub_pfaffian_conventions() {
        let z = SkewMatrix::from_upper_fn(6, |i, j| int((i * 7 + j * 3) as i64 % 5 - 2));
        assert_eq!(sub_pfaffian(&z, &IndexSubset::empty()).unwrap(), int(1));
        assert_eq!(sub_pfaffian(&z, &IndexSubset::new(vec![1, 2]).unwrap()).unwrap(), z.get(0, 1));
        let i4 = IndexSubset::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(sub_pfaffian(&z, &i4).unwrap(), matching_sum(&z, &[0, 1, 2, 3]));
        assert!(sub_pfaffian(&z, &IndexSubset::new(vec![1, 2, 3]).unwrap()).is_err());
    }

    #[test]
    fn sgn_values() {
        assert_eq!(sgn_index(&IndexSubset::empty()).unwrap(), int(1));
        assert_eq!(sgn_index(&IndexSubset::new(vec![1, 2]).unwrap()).unwrap(), int(1));
        assert_eq!(sgn_index(&IndexSubset::new(vec![1, 3]).unwrap()).unwrap(), int(-1));
        assert!(sgn_index(&IndexSubset::new(vec![1]).unwrap()).is_err());
    }

    #[test]
    fn tilde_cases() {
        assert!(tilde(&SkewMatrix::zeros(4)).is_zero());
        let mut z = SkewMatrix::zeros(2);
        z.set(0, 1, int(3));
        assert_eq!(tilde(&z), z);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn pfaffian_squared_is_determinant(z in (0usize..=12).prop_flat_map(skew)) {
            let pf = pfaffian(&z);
            prop_assert_eq!(&pf * &pf, det_exact(&z.to_matrix()).unwrap());
        }

        #[test]
        fn elimination_matches_matching_sum(z in (0usize..=8).prop_flat_map(skew)) {
            let all: Vec<usize> = (0..z.dim()).collect();
            prop_assert_eq!(pfaffian(&z), matching_sum(&z, &all));
        }

        #[test]
        fn tilde_twists_every_even_subpfaffian(z in (0usize..=8).prop_flat_map(skew)) {
            let zt = tilde(&z);
            for r in (0..=z.dim()).step_by(2) {
                for c in (1..=z.dim()).combinations(r) {
                    let idx = IndexSubset::new(c).unwrap();
                    prop_assert_eq!(
                        sub_pfaffian(&zt, &idx).unwrap(),
                        sgn_index(&idx).unwrap() * sub_pfaffian(&z, &idx).unwrap()
                    );
                }
            }
        }
    }
}
