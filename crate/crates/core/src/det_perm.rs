//! Permanents, the 5x5 determinantal representation of `x1x2x3 + x4x5x6`, and
//! Taylor coefficients of the determinant hypersurface at a corank-one point.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{int, one, zero, Scalar};
use crate::exact::{det_exact, Matrix};
use crate::poly::{symbolic_det, MultiPoly};

pub const NAIVE_PERMANENT_MAX: usize = 10;
pub const RYSER_PERMANENT_MAX: usize = 20;

fn check_square(m: &Matrix, cap: usize) -> Result<usize> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension(format!("permanent needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if m.rows() > cap {
        return Err(Error::Resource {
            what: "matrix size",
            got: m.rows(),
            cap,
        });
    }
    Ok(m.rows())
}

/// `Σ_σ Π_i m[i][σ(i)]`, term by term.
pub fn permanent_naive(m: &Matrix) -> Result<Scalar> {
    let n = check_square(m, NAIVE_PERMANENT_MAX)?;
    let mut total = zero();
    for perm in (0..n).permutations(n) {
        let mut term = one();
        for (i, &j) in perm.iter().enumerate() {
            term *= m.get(i, j);
            if term.is_zero() {
                break;
            }
        }
        total += term;
    }
    Ok(total)
}

/// Ryser's inclusion-exclusion formula with subsets visited in Gray-code
/// order, over integers after clearing each row's denominators.
pub fn permanent_ryser(m: &Matrix) -> Result<Scalar> {
    let n = check_square(m, RYSER_PERMANENT_MAX)?;
    if n == 0 {
        return Ok(one());
    }
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let lcm = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(m.get(i, j).denom()));
            scale *= &lcm;
            (0..n).map(|j| m.get(i, j).numer() * (&lcm / m.get(i, j).denom())).collect()
        })
        .collect();
    let value = ryser_i128(&rows).unwrap_or_else(|| ryser_big(&rows));
    Ok(Scalar::new(value, scale))
}

fn ryser_i128(rows: &[Vec<BigInt>]) -> Option<BigInt> {
    let n = rows.len();
    let a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let mut sums = vec![0i128; n];
    let mut total = 0i128;
    let mut gray = 0u32;
    for k in 1u32..1 << n {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for i in 0..n {
            sums[i] = if adding { sums[i].checked_add(a[i][j])? } else { sums[i].checked_sub(a[i][j])? };
        }
        let mut prod = 1i128;
        for s in &sums {
            prod = prod.checked_mul(*s)?;
        }
        // (-1)^(n - |S|)
        total = if (n as u32 - gray.count_ones()) % 2 == 0 {
            total.checked_add(prod)?
        } else {
            total.checked_sub(prod)?
        };
    }
    Some(BigInt::from(total))
}

fn ryser_big(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut gray = 0u32;
    for k in 1u32..1 << n {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for i in 0..n {
            if adding {
                sums[i] += &rows[i][j];
            } else {
                sums[i] -= &rows[i][j];
            }
        }
        let prod: BigInt = sums.iter().product();
        if (n as u32 - gray.count_ones()) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// The 5x5 matrix of linear polynomials in `x1..x6` whose determinant is
/// `x1x2x3 + x4x5x6`.
pub fn valiant_matrix() -> Vec<Vec<MultiPoly>> {
    let x = |i: usize| MultiPoly::var(6, i - 1);
    let c = |v: i64| MultiPoly::constant(6, int(v));
    vec![
        vec![c(0), x(1), c(0), x(4), c(0)],
        vec![c(0), c(1), x(2), c(0), c(0)],
        vec![x(3), c(0), c(1), c(0), c(0)],
        vec![c(0), c(0), c(0), c(1), x(5)],
        vec![x(6), c(0), c(0), c(0), c(1)],
    ]
}

pub fn valiant_target() -> MultiPoly {
    let x = |i: usize| MultiPoly::var(6, i - 1);
    &(&x(1) * &x(2)) * &x(3) + &(&x(4) * &x(5)) * &x(6)
}

/// Expands the determinant of [`valiant_matrix`] fully and compares it with
/// `x1x2x3 + x4x5x6`.
pub fn valiant_example_verify() -> bool {
    symbolic_det(&valiant_matrix()) == valiant_target()
}

/// The numeric 5x5 matrix at a point `x ∈ Q^6`.
pub fn valiant_matrix_at(x: &[Scalar]) -> Result<Matrix> {
    if x.len() != 6 {
        return Err(Error::Dimension("the example has 6 variables".into()));
    }
    let rows = valiant_matrix()
        .iter()
        .map(|r| r.iter().map(|p| p.eval(x)).collect())
        .collect();
    Matrix::from_rows(rows)
}

/// A tangent vector `(x, A, y)` at the corank-one point `diag(1, ..., 1, 0)`:
/// `x` is `1 x m`, `A` is `m x m`, `y` is `m x 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentTriple {
    x: Matrix,
    a: Matrix,
    y: Matrix,
}

impl TangentTriple {
    pub fn new(x: Matrix, a: Matrix, y: Matrix) -> Result<Self> {
        let m = a.rows();
        if a.cols() != m || x.rows() != 1 || x.cols() != m || y.rows() != m || y.cols() != 1 {
            return Err(Error::Dimension(format!(
                "expected x 1x{m}, A {m}x{m}, y {m}x1; got x {}x{}, A {}x{}, y {}x{}",
                x.rows(),
                x.cols(),
                a.rows(),
                a.cols(),
                y.rows(),
                y.cols()
            )));
        }
        Ok(TangentTriple { x, a, y })
    }

    /// Three matrices in a row: `x`, then `A`, then `y`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ms = Matrix::parse_many(text, 3)?.into_iter();
        let (x, a, y) = (ms.next().unwrap(), ms.next().unwrap(), ms.next().unwrap());
        Self::new(x, a, y)
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }
}

/// `c_2, ..., c_kmax` of the solved graph `w(t)` of
/// `det [[Id + tA, t y], [t x, w]] = 0`, computed two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorCoefficients {
    /// Power-series division of two interpolated determinant polynomials.
    pub from_graph: Vec<Scalar>,
    /// `(-1)^k x A^(k-2) y`.
    pub from_powers: Vec<Scalar>,
}

impl TaylorCoefficients {
    pub fn agree(&self) -> bool {
        self.from_graph == self.from_powers
    }
}

/// Coefficients of the polynomial through `(t_i, v_i)`, lowest degree first.
fn interpolate(points: &[(Scalar, Scalar)]) -> Vec<Scalar> {
    let n = points.len();
    let mut coeffs = vec![zero(); n];
    for (i, (ti, vi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (t - t_j) / (t_i - t_j)
        let mut basis = vec![one()];
        let mut denom = one();
        for (j, (tj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * tj;
            }
            basis = next;
            denom *= ti - tj;
        }
        let factor = vi / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &factor;
        }
    }
    coeffs
}

pub fn det_local_taylor(t: &TangentTriple, k_max: usize) -> Result<TaylorCoefficients> {
    if k_max < 2 {
        return Err(Error::Invalid("k_max must be at least 2".into()));
    }
    let m = t.size();
    let id = Matrix::identity(m);
    let id_plus_a = id.add(&t.a)?;
    if det_exact(&id_plus_a)?.is_zero() {
        return Err(Error::Singular(
            "Id + A is singular, so the point (x, A, y) lies off the chart where w = x(Id + A)^(-1)y".into(),
        ));
    }

    // (i) D(t) = det(Id + tA), E(t) = det [[Id + tA, ty], [tx, 0]]; w = -E/D.
    let bordered = |s: &Scalar| -> Result<(Scalar, Scalar)> {
        let block = id.add(&t.a.scale(s))?;
        let d = det_exact(&block)?;
        let big = Matrix::from_fn(m + 1, m + 1, |i, j| match (i < m, j < m) {
            (true, true) => block.get(i, j).clone(),
            (true, false) => s * t.y.get(i, 0),
            (false, true) => s * t.x.get(0, j),
            (false, false) => zero(),
        });
        Ok((d, det_exact(&big)?))
    };
    let mut d_pts = Vec::with_capacity(m + 2);
    let mut e_pts = Vec::with_capacity(m + 2);
    for k in 0..=(m as i64 + 1) {
        let s = int(k);
        let (d, e) = bordered(&s)?;
        d_pts.push((s.clone(), d));
        e_pts.push((s, e));
    }
    let d_poly = interpolate(&d_pts);
    let e_poly = interpolate(&e_pts);
    let coeff = |p: &[Scalar], k: usize| p.get(k).cloned().unwrap_or_else(zero);
    // D(0) = 1, so w_k = -E_k - Σ_{j=1..k} D_j w_{k-j}
    let mut w: Vec<Scalar> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut v = -coeff(&e_poly, k);
        for j in 1..=k {
            v -= coeff(&d_poly, j) * &w[k - j];
        }
        w.push(v);
    }
    let from_graph = w[2..].to_vec();

    // (ii) matrix powers
    let mut from_powers = Vec::with_capacity(k_max - 1);
    let mut v = t.y.clone();
    for k in 2..=k_max {
        let xv = t.x.mul(&v)?.get(0, 0).clone();
        from_powers.push(if k % 2 == 0 { xv } else { -xv });
        v = t.a.mul(&v)?;
    }
    Ok(TaylorCoefficients { from_graph, from_powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::ratio;
    use crate::sampling;
    use proptest::prelude::*;

    #[test]
    fn permanent_examples() {
        assert_eq!(permanent_naive(&Matrix::identity(4)).unwrap(), int(1));
        let ones = |n| Matrix::from_fn(n, n, |_, _| one());
        assert_eq!(permanent_naive(&ones(5)).unwrap(), int(120));
        assert_eq!(permanent_ryser(&ones(5)).unwrap(), int(120));
        assert_eq!(permanent_ryser(&ones(7)).unwrap(), int(5040));
        let m = Matrix::from_i64(2, 2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(permanent_naive(&m).unwrap(), int(10));
        assert_eq!(permanent_ryser(&m).unwrap(), int(10));
        assert_eq!(permanent_ryser(&Matrix::identity(20)).unwrap(), int(1));
        assert_eq!(permanent_ryser(&Matrix::zeros(0, 0)).unwrap(), int(1));
    }

    #[test]
    fn permanent_caps_and_shapes() {
        assert!(matches!(permanent_naive(&Matrix::identity(11)), Err(Error::Resource { .. })));
        assert!(matches!(permanent_ryser(&Matrix::identity(21)), Err(Error::Resource { .. })));
        assert!(permanent_naive(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn ryser_overflow_falls_back() {
        let big = 1i64 << 40;
        let m = Matrix::from_fn(6, 6, |i, j| int(big + (i * 6 + j) as i64));
        assert_eq!(permanent_ryser(&m).unwrap(), permanent_naive(&m).unwrap());
    }

    #[test]
    fn valiant_example() {
        assert!(valiant_example_verify());
        let at = |v: [i64; 6]| det_exact(&valiant_matrix_at(&v.map(int)).unwrap()).unwrap();
        assert_eq!(at([1; 6]), int(2));
        assert_eq!(at([1, 2, 3, 4, 5, 6]), int(126));
    }

    #[test]
    fn taylor_examples() {
        let x = Matrix::from_i64(1, 3, &[1, 2, -1]).unwrap();
        let y = Matrix::from_i64(3, 1, &[3, 0, 2]).unwrap();
        let t = TangentTriple::new(x, Matrix::zeros(3, 3), y).unwrap();
        let c = det_local_taylor(&t, 5).unwrap();
        assert_eq!(c.from_graph, vec![int(1), int(0), int(0), int(0)]);
        assert!(c.agree());

        let a = ratio(3, 2);
        let e1 = Matrix::from_fn(1, 3, |_, j| if j == 0 { one() } else { zero() });
        let diag = Matrix::from_fn(3, 3, |i, j| if i == 0 && j == 0 { a.clone() } else { zero() });
        let t = TangentTriple::new(e1.clone(), diag, e1.transpose()).unwrap();
        let c = det_local_taylor(&t, 6).unwrap();
        let expect: Vec<Scalar> = (2..=6)
            .map(|k| {
                let p = (0..k - 2).fold(one(), |acc, _| acc * &a);
                if k % 2 == 0 {
                    p
                } else {
                    -p
                }
            })
            .collect();
        assert_eq!(c.from_graph, expect);
        assert_eq!(c.from_powers, expect);
    }

    #[test]
    fn taylor_errors() {
        let x = Matrix::zeros(1, 2);
        let y = Matrix::zeros(2, 1);
        let a = Matrix::from_i64(2, 2, &[-1, 0, 0, 0]).unwrap();
        let t = TangentTriple::new(x.clone(), a, y.clone()).unwrap();
        assert!(matches!(det_local_taylor(&t, 4), Err(Error::Singular(_))));
        assert!(TangentTriple::new(x.clone(), Matrix::zeros(3, 3), y).is_err());
        let t = TangentTriple::new(x, Matrix::zeros(2, 2), Matrix::zeros(2, 1)).unwrap();
        assert!(det_local_taylor(&t, 1).is_err());
    }

    #[test]
    fn triple_file_format() {
        let t = TangentTriple::parse("1 2\n1 2\n2 2\n0 1\n1/2 0\n2 1\n3\n-1\n").unwrap();
        assert_eq!(t.size(), 2);
        assert!(TangentTriple::parse("1 2\n1 2\n").is_err());
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let p = [int(3), int(-1), ratio(1, 2)];
        let pts: Vec<(Scalar, Scalar)> = (0..3)
            .map(|k| {
                let t = int(k);
                let v = &p[0] + &p[1] * &t + &p[2] * &t * &t;
                (t, v)
            })
            .collect();
        assert_eq!(interpolate(&pts), p.to_vec());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn ryser_matches_naive(seed in any::<u64>(), n in 0usize..=7) {
            let mut rng = sampling::rng(seed);
            let m = sampling::matrix(&mut rng, n, n);
            prop_assert_eq!(permanent_ryser(&m).unwrap(), permanent_naive(&m).unwrap());
        }

        #[test]
        fn diagonal_det_equals_permanent(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = sampling::rng(seed);
            let d = sampling::vector(&mut rng, n);
            let m = Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { zero() });
            prop_assert_eq!(det_exact(&m).unwrap(), permanent_ryser(&m).unwrap());
        }

        #[test]
        fn taylor_paths_agree(seed in any::<u64>(), m in 1usize..=5, k in 2usize..=6) {
            let mut rng = sampling::rng(seed);
            let t = TangentTriple::new(
                sampling::matrix(&mut rng, 1, m),
                sampling::matrix(&mut rng, m, m),
                sampling::matrix(&mut rng, m, 1),
            ).unwrap();
            match det_local_taylor(&t, k) {
                Ok(c) => prop_assert!(c.agree()),
                Err(e) => prop_assert!(matches!(e, Error::Singular(_))),
            }
        }
    }
}
