//! Big-cell coordinate vectors of the cominuscule families and their pairings.
//!
//! A point of the big cell is a small matrix (or vector). Its coordinate
//! vector in `V` lists all minors (Grassmannian, Lagrangian), all
//! sub-Pfaffians (spinor) or all monomials (Segre, Veronese); the dimension
//! of `V` is exponential in the matrix size. [`naive_pair`] pairs two such
//! expanded vectors coordinate by coordinate. [`fast_pair`] computes the same
//! value as a single determinant or Pfaffian of a matrix of polynomial size.

mod family;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

pub(crate) use family::binomial;
pub use family::{FamilyKind, IndexKey, PairingFamily};

use crate::error::{Error, Result};
use crate::exact::det::det_counted;
use crate::exact::pfaffian::pfaffian_counted;
use crate::exact::scalar::{one, zero, Scalar};
use crate::exact::{
    minor, sgn_index, sub_pfaffian, tilde, IndexSubset, Matrix, OpTally, SkewMatrix, SymMatrix,
};
use crate::sampling;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointParams {
    Matrix(Matrix),
    Skew(SkewMatrix),
    Sym(SymMatrix),
    Vector(Vec<Scalar>),
}

/// A point of a family's big cell, given by its local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigCellPoint {
    family: PairingFamily,
    params: PointParams,
}

impl BigCellPoint {
    pub fn new(family: PairingFamily, params: PointParams) -> Result<Self> {
        family.validate()?;
        let ok = match (&family, &params) {
            (PairingFamily::Grassmannian { k, n }, PointParams::Matrix(x)) => {
                x.rows() == *k && x.cols() == n - k
            }
            (PairingFamily::Spinor { n }, PointParams::Skew(z)) => z.dim() == *n,
            (PairingFamily::Lagrangian { n }, PointParams::Sym(x)) => x.dim() == *n,
            (PairingFamily::Segre { factors, p }, PointParams::Matrix(x)) => {
                x.rows() == *p && x.cols() == *factors
            }
            (PairingFamily::Veronese { p, .. }, PointParams::Vector(x)) => x.len() == *p,
            _ => false,
        };
        if !ok {
            return Err(Error::Dimension(format!("point shape does not match {family}")));
        }
        Ok(BigCellPoint { family, params })
    }

    /// `x` is `k x (n-k)`.
    pub fn grassmannian(x: Matrix) -> Result<Self> {
        let family = PairingFamily::Grassmannian {
            k: x.rows(),
            n: x.rows() + x.cols(),
        };
        Self::new(family, PointParams::Matrix(x))
    }

    pub fn spinor(z: SkewMatrix) -> Result<Self> {
        Self::new(PairingFamily::Spinor { n: z.dim() }, PointParams::Skew(z))
    }

    pub fn lagrangian(x: SymMatrix) -> Result<Self> {
        Self::new(PairingFamily::Lagrangian { n: x.dim() }, PointParams::Sym(x))
    }

    /// Column `s` of `x` holds the coordinates `x^1_s, ..., x^p_s` of factor `s`.
    pub fn segre(x: Matrix) -> Result<Self> {
        let family = PairingFamily::Segre {
            factors: x.cols(),
            p: x.rows(),
        };
        Self::new(family, PointParams::Matrix(x))
    }

    pub fn veronese(degree: usize, x: Vec<Scalar>) -> Result<Self> {
        let family = PairingFamily::Veronese { degree, p: x.len() };
        Self::new(family, PointParams::Vector(x))
    }

    /// Builds a point of the given kind from a parsed matrix file.
    pub fn from_matrix(kind: FamilyKind, m: Matrix) -> Result<Self> {
        match kind {
            FamilyKind::Grassmannian => Self::grassmannian(m),
            FamilyKind::Spinor => Self::spinor(SkewMatrix::from_matrix(&m)?),
            FamilyKind::Lagrangian => Self::lagrangian(SymMatrix::from_matrix(&m)?),
            FamilyKind::Segre => Self::segre(m),
            FamilyKind::Veronese { degree } => {
                if m.rows() != 1 && m.cols() != 1 {
                    return Err(Error::Dimension("Veronese point must be a row or column vector".into()));
                }
                Self::veronese(degree, m.entries().to_vec())
            }
        }
    }

    /// Zero point of the family (the base point of the big cell).
    pub fn origin(family: PairingFamily) -> Result<Self> {
        family.validate()?;
        let params = match family {
            PairingFamily::Grassmannian { k, n } => PointParams::Matrix(Matrix::zeros(k, n - k)),
            PairingFamily::Spinor { n } => PointParams::Skew(SkewMatrix::zeros(n)),
            PairingFamily::Lagrangian { n } => PointParams::Sym(SymMatrix::from_upper_fn(n, |_, _| zero())),
            PairingFamily::Segre { factors, p } => PointParams::Matrix(Matrix::zeros(p, factors)),
            PairingFamily::Veronese { p, .. } => PointParams::Vector(vec![zero(); p]),
        };
        Self::new(family, params)
    }

    /// Random point with small rational coordinates.
    pub fn random(family: PairingFamily, rng: &mut impl Rng) -> Result<Self> {
        family.validate()?;
        let params = match family {
            PairingFamily::Grassmannian { k, n } => PointParams::Matrix(sampling::matrix(rng, k, n - k)),
            PairingFamily::Spinor { n } => PointParams::Skew(sampling::skew(rng, n)),
            PairingFamily::Lagrangian { n } => PointParams::Sym(sampling::sym(rng, n)),
            PairingFamily::Segre { factors, p } => PointParams::Matrix(sampling::matrix(rng, p, factors)),
            PairingFamily::Veronese { p, .. } => PointParams::Vector(sampling::vector(rng, p)),
        };
        Self::new(family, params)
    }

    pub fn family(&self) -> PairingFamily {
        self.family
    }

    pub fn params(&self) -> &PointParams {
        &self.params
    }
}

/// Expanded coordinate vector; zero coordinates are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVector {
    family: PairingFamily,
    coords: BTreeMap<IndexKey, Scalar>,
}

impl SparseVector {
    fn from_fn(family: PairingFamily, mut f: impl FnMut(&IndexKey) -> Result<Scalar>) -> Result<Self> {
        let mut coords = BTreeMap::new();
        for key in family.keys() {
            let v = f(&key)?;
            if !v.is_zero() {
                coords.insert(key, v);
            }
        }
        Ok(SparseVector { family, coords })
    }

    pub fn family(&self) -> PairingFamily {
        self.family
    }

    pub fn get(&self, key: &IndexKey) -> Scalar {
        self.coords.get(key).cloned().unwrap_or_else(zero)
    }

    /// The coordinate at the empty key.
    pub fn leading(&self) -> Scalar {
        self.get(&IndexKey::empty())
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (&IndexKey, &Scalar)> {
        self.coords.iter()
    }

    /// All coordinates in canonical key order, zeros included.
    pub fn to_dense(&self) -> Vec<Scalar> {
        self.family.keys().iter().map(|k| self.get(k)).collect()
    }
}

fn subset(idx: &[usize]) -> IndexSubset {
    IndexSubset::new(idx.to_vec()).expect("family keys are strictly increasing")
}

fn multinomial(total: usize, parts: &[usize]) -> BigInt {
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |a, i| a * BigInt::from(i));
    parts.iter().fold(fact(total), |acc, &k| acc / fact(k))
}

fn monomial(vals: impl Iterator<Item = Scalar>) -> Scalar {
    vals.fold(one(), |acc, v| acc * v)
}

fn expand_side(point: &BigCellPoint, dual: bool) -> Result<SparseVector> {
    let family = point.family;
    match &point.params {
        PointParams::Matrix(x) if matches!(family, PairingFamily::Grassmannian { .. }) => {
            // Same-shape convention: the dual coordinate at (I, S) is Δ_{I,S}(y).
            SparseVector::from_fn(family, |k| minor(x, &subset(&k.rows), &subset(&k.cols)))
        }
        PointParams::Sym(x) => {
            let m = x.to_matrix();
            SparseVector::from_fn(family, |k| {
                if dual {
                    minor(&m, &subset(&k.cols), &subset(&k.rows))
                } else {
                    minor(&m, &subset(&k.rows), &subset(&k.cols))
                }
            })
        }
        PointParams::Skew(z) => SparseVector::from_fn(family, |k| sub_pfaffian(z, &subset(&k.rows))),
        PointParams::Matrix(x) => SparseVector::from_fn(family, |k| {
            Ok(monomial(k.rows.iter().zip(&k.cols).map(|(&j, &s)| x.get(j - 1, s - 1).clone())))
        }),
        PointParams::Vector(x) => {
            let PairingFamily::Veronese { degree, p } = family else {
                unreachable!("vector points are Veronese")
            };
            SparseVector::from_fn(family, |k| {
                let value = monomial(k.rows.iter().map(|&j| x[j - 1].clone()));
                if dual {
                    return Ok(value);
                }
                let mut parts = vec![degree - k.rows.len()];
                parts.extend((1..=p).map(|j| k.rows.iter().filter(|&&r| r == j).count()));
                Ok(value * Scalar::from_integer(multinomial(degree, &parts)))
            })
        }
    }
}

/// The full coordinate vector of a big-cell point; the empty-key coordinate is 1.
pub fn expand(point: &BigCellPoint) -> Result<SparseVector> {
    expand_side(point, false)
}

/// The dual-side coordinate vector, keyed so that [`naive_pair`] is a weighted
/// dot product.
pub fn expand_dual(point: &BigCellPoint) -> Result<SparseVector> {
    expand_side(point, true)
}

fn pairing_weight(family: PairingFamily, key: &IndexKey) -> Result<Scalar> {
    match family {
        PairingFamily::Spinor { .. } => sgn_index(&subset(&key.rows)),
        _ => Ok(one()),
    }
}

/// Coordinate-by-coordinate pairing; cost proportional to `dim V`.
pub fn naive_pair(v: &SparseVector, a: &SparseVector) -> Result<Scalar> {
    if v.family != a.family {
        return Err(Error::Dimension(format!(
            "cannot pair {} with {}",
            v.family, a.family
        )));
    }
    let mut acc = zero();
    for (key, x) in &v.coords {
        if let Some(y) = a.coords.get(key) {
            acc += pairing_weight(v.family, key)? * x * y;
        }
    }
    Ok(acc)
}

/// The pairing of `expand(x)` with `expand_dual(y)` as one determinant or
/// Pfaffian of polynomial size.
pub fn fast_pair(x: &BigCellPoint, y: &BigCellPoint) -> Result<Scalar> {
    fast_pair_counted(x, y, &mut OpTally::new())
}

/// [`fast_pair`] with an operation tally.
pub fn fast_pair_counted(x: &BigCellPoint, y: &BigCellPoint, ops: &mut OpTally) -> Result<Scalar> {
    if x.family != y.family {
        return Err(Error::Dimension(format!(
            "cannot pair {} with {}",
            x.family, y.family
        )));
    }
    match (&x.params, &y.params) {
        (PointParams::Matrix(a), PointParams::Matrix(b))
            if matches!(x.family, PairingFamily::Grassmannian { .. }) =>
        {
            // det(I_k + x yᵀ) = det(I_{n-k} + xᵀ y); use the smaller one.
            let prod = if a.rows() <= a.cols() {
                counted_product(a, &b.transpose(), ops)
            } else {
                counted_product(&a.transpose(), b, ops)
            };
            det_counted(&plus_identity(prod, ops), ops)
        }
        (PointParams::Sym(a), PointParams::Sym(b)) => {
            let prod = counted_product(&a.to_matrix(), &b.to_matrix(), ops);
            det_counted(&plus_identity(prod, ops), ops)
        }
        (PointParams::Skew(z), PointParams::Skew(w)) => Ok(pfaffian_counted(&spinor_pairing_matrix(z, w), ops)),
        (PointParams::Matrix(a), PointParams::Matrix(b)) => {
            det_counted(&segre_block_matrix(a.rows(), a.cols(), |j, s| a.get(j, s).clone(), |j, s| b.get(j, s).clone()), ops)
        }
        (PointParams::Vector(a), PointParams::Vector(b)) => {
            let PairingFamily::Veronese { degree, p } = x.family else {
                unreachable!("vector points are Veronese")
            };
            det_counted(&segre_block_matrix(p, degree, |j, _| a[j].clone(), |j, _| b[j].clone()), ops)
        }
        _ => Err(Error::Dimension("mismatched point parameters".into())),
    }
}

fn counted_product(a: &Matrix, b: &Matrix, ops: &mut OpTally) -> Matrix {
    let (r, inner, c) = (a.rows() as u64, a.cols() as u64, b.cols() as u64);
    ops.mul(r * inner * c);
    ops.add(r * inner.saturating_sub(1) * c);
    a.mul(b).expect("shapes checked by the caller")
}

fn plus_identity(mut m: Matrix, ops: &mut OpTally) -> Matrix {
    for i in 0..m.rows() {
        let v = m.get(i, i) + one();
        m.set(i, i, v);
    }
    ops.add(m.rows() as u64);
    m
}

/// The `2n x 2n` skew matrix of `z̃ + Id_E - y` in the basis
/// `e_1, e^1, ..., e_n, e^n`. Its Pfaffian is `Σ_I sgn(I) Pf_I(z) Pf_I(y)`.
pub fn spinor_pairing_matrix(z: &SkewMatrix, y: &SkewMatrix) -> SkewMatrix {
    let zt = tilde(z);
    let n = z.dim();
    SkewMatrix::from_upper_fn(2 * n, |a, b| {
        let (i, si) = (a / 2, a % 2);
        let (j, sj) = (b / 2, b % 2);
        match (si, sj) {
            (0, 0) => zt.get(i, j),
            (1, 1) => -y.get(i, j),
            (0, 1) if i == j => one(),
            _ => zero(),
        }
    })
}

/// Block matrix `[[I_n, -X_1, ..., -X_p], [Y_1, I_n, 0..], ..., [Y_p, .., I_n]]`
/// with `X_j = diag(x(j, s))`, `Y_j = diag(y(j, s))`, 0-based `j < p`, `s < n`.
fn segre_block_matrix(
    p: usize,
    n: usize,
    x: impl Fn(usize, usize) -> Scalar,
    y: impl Fn(usize, usize) -> Scalar,
) -> Matrix {
    Matrix::from_fn(n * (p + 1), n * (p + 1), |r, c| {
        let (br, s) = (r / n, r % n);
        let (bc, t) = (c / n, c % n);
        if s != t {
            zero()
        } else if br == bc {
            one()
        } else if br == 0 {
            -x(bc - 1, s)
        } else if bc == 0 {
            y(br - 1, s)
        } else {
            zero()
        }
    })
}

/// Operation tallies of one [`fast_pair`] call on random points of the family.
pub fn count_operations(family: PairingFamily, seed: u64) -> Result<OpTally> {
    let mut rng = sampling::rng(seed);
    let x = BigCellPoint::random(family, &mut rng)?;
    let y = BigCellPoint::random(family, &mut rng)?;
    let mut ops = OpTally::new();
    fast_pair_counted(&x, &y, &mut ops)?;
    Ok(ops)
}

/// Grassmannian coefficients of `det(Id + t·x·yᵀ)` by degree: the sum of
/// `Δ_{I,S}(x) Δ_{I,S}(y)` over `|I| = q`, for `q = 0..=min(k, n-k)`.
pub fn grassmannian_charpoly_coefficients(x: &Matrix, y: &Matrix) -> Result<Vec<Scalar>> {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::Dimension("x and y must have the same shape".into()));
    }
    let top = x.rows().min(x.cols());
    (0..=top)
        .map(|q| {
            let mut acc = zero();
            for rows in (1..=x.rows()).combinations(q) {
                let rs = subset(&rows);
                for cols in (1..=x.cols()).combinations(q) {
                    let cs = subset(&cols);
                    acc += minor(x, &rs, &cs)? * minor(y, &rs, &cs)?;
                }
            }
            Ok(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, ratio};
    use crate::exact::{det_exact, pfaffian};

    fn grass(rows: usize, cols: usize, v: &[i64]) -> BigCellPoint {
        BigCellPoint::grassmannian(Matrix::from_i64(rows, cols, v).unwrap()).unwrap()
    }

    #[test]
    fn grassmannian_1_3_expansion() {
        let x = grass(1, 2, &[5, 7]);
        assert_eq!(expand(&x).unwrap().to_dense(), vec![int(1), int(5), int(7)]);
        let y = grass(1, 2, &[2, 3]);
        assert_eq!(expand_dual(&y).unwrap().to_dense(), vec![int(1), int(2), int(3)]);
    }

    #[test]
    fn grassmannian_2_4_identity() {
        let x = grass(2, 2, &[1, 0, 0, 1]);
        let dense = expand(&x).unwrap().to_dense();
        assert_eq!(dense, [1, 1, 0, 0, 1, 1].map(int).to_vec());
        let v = expand(&x).unwrap();
        let a = expand_dual(&x).unwrap();
        assert_eq!(naive_pair(&v, &a).unwrap(), int(4));
        assert_eq!(fast_pair(&x, &x).unwrap(), int(4));
    }

    #[test]
    fn grassmannian_1_2_pairing() {
        let x = grass(1, 1, &[1]);
        // G(1,2) points are 1x1, so the (1,2)/(3,4) pair lives in G(1,3)
        let x3 = grass(1, 2, &[1, 2]);
        let y3 = grass(1, 2, &[3, 4]);
        let v = expand(&x3).unwrap();
        let a = expand_dual(&y3).unwrap();
        assert_eq!(naive_pair(&v, &a).unwrap(), int(12));
        assert_eq!(fast_pair(&x3, &y3).unwrap(), int(12));
        assert_eq!(fast_pair(&x, &x).unwrap(), int(2));
    }

    #[test]
    fn zero_points() {
        for fam in [
            PairingFamily::Grassmannian { k: 2, n: 5 },
            PairingFamily::Spinor { n: 4 },
            PairingFamily::Lagrangian { n: 3 },
            PairingFamily::Segre { factors: 3, p: 2 },
            PairingFamily::Veronese { degree: 3, p: 2 },
        ] {
            let zero_pt = BigCellPoint::origin(fam).unwrap();
            let mut rng = sampling::rng(7);
            let x = BigCellPoint::random(fam, &mut rng).unwrap();
            let v = expand(&x).unwrap();
            assert_eq!(v.leading(), int(1));
            assert_eq!(naive_pair(&v, &expand_dual(&zero_pt).unwrap()).unwrap(), int(1));
            assert_eq!(fast_pair(&zero_pt, &x).unwrap(), int(1), "{fam}");
        }
        let z = expand(&BigCellPoint::origin(PairingFamily::Spinor { n: 4 }).unwrap()).unwrap();
        let mut expect = vec![int(0); 8];
        expect[0] = int(1);
        assert_eq!(z.to_dense(), expect);
    }

    #[test]
    fn family_mismatch_errors() {
        let g = BigCellPoint::origin(PairingFamily::Grassmannian { k: 1, n: 3 }).unwrap();
        let s = BigCellPoint::origin(PairingFamily::Spinor { n: 3 }).unwrap();
        assert!(fast_pair(&g, &s).is_err());
        assert!(naive_pair(&expand(&g).unwrap(), &expand(&s).unwrap()).is_err());
        assert!(BigCellPoint::new(
            PairingFamily::Grassmannian { k: 2, n: 4 },
            PointParams::Matrix(Matrix::zeros(2, 3))
        )
        .is_err());
        assert!(BigCellPoint::from_matrix(FamilyKind::Spinor, Matrix::from_i64(2, 2, &[0, 1, 1, 0]).unwrap()).is_err());
    }

    #[test]
    fn spinor_matrix_identity_small_cases() {
        // n = 2: P = 1 + sgn({1,2}) z12 y12 = 1 + z12 y12
        let mut z = SkewMatrix::zeros(2);
        z.set(0, 1, int(3));
        let mut y = SkewMatrix::zeros(2);
        y.set(0, 1, int(5));
        assert_eq!(pfaffian(&spinor_pairing_matrix(&z, &y)), int(16));
    }

    #[test]
    fn spinor_six_random_agrees_with_naive() {
        let mut rng = sampling::rng(11);
        for _ in 0..5 {
            let x = BigCellPoint::random(PairingFamily::Spinor { n: 6 }, &mut rng).unwrap();
            let y = BigCellPoint::random(PairingFamily::Spinor { n: 6 }, &mut rng).unwrap();
            let v = expand(&x).unwrap();
            assert_eq!(v.family().keys().len(), 32);
            let naive = naive_pair(&v, &expand_dual(&y).unwrap()).unwrap();
            assert_eq!(fast_pair(&x, &y).unwrap(), naive);
        }
    }

    #[test]
    fn lagrangian_matches_det() {
        let mut rng = sampling::rng(3);
        let x = sampling::sym(&mut rng, 3);
        let y = sampling::sym(&mut rng, 3);
        let direct = det_exact(&Matrix::identity(3).add(&x.to_matrix().mul(&y.to_matrix()).unwrap()).unwrap()).unwrap();
        let px = BigCellPoint::lagrangian(x).unwrap();
        let py = BigCellPoint::lagrangian(y).unwrap();
        assert_eq!(fast_pair(&px, &py).unwrap(), direct);
        assert_eq!(naive_pair(&expand(&px).unwrap(), &expand_dual(&py).unwrap()).unwrap(), direct);
    }

    #[test]
    fn segre_and_veronese_closed_forms() {
        // Segre: Π_s (1 + Σ_j x^j_s y^j_s)
        let x = Matrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap();
        let y = Matrix::from_i64(2, 3, &[1, -1, 2, 0, 1, -1]).unwrap();
        let expect: Scalar = (0..3)
            .map(|s| one() + (0..2).fold(zero(), |a, j| a + x.get(j, s) * y.get(j, s)))
            .product();
        let (px, py) = (BigCellPoint::segre(x).unwrap(), BigCellPoint::segre(y).unwrap());
        assert_eq!(fast_pair(&px, &py).unwrap(), expect);
        assert_eq!(naive_pair(&expand(&px).unwrap(), &expand_dual(&py).unwrap()).unwrap(), expect);

        // Veronese: (1 + x·y)^degree
        let (vx, vy) = (vec![ratio(1, 2), int(3)], vec![int(2), ratio(-1, 3)]);
        let base = one() + &vx[0] * &vy[0] + &vx[1] * &vy[1];
        let px = BigCellPoint::veronese(4, vx).unwrap();
        let py = BigCellPoint::veronese(4, vy).unwrap();
        let expect = (0..4).fold(one(), |a, _| a * &base);
        assert_eq!(fast_pair(&px, &py).unwrap(), expect);
        assert_eq!(naive_pair(&expand(&px).unwrap(), &expand_dual(&py).unwrap()).unwrap(), expect);
    }

    #[test]
    fn charpoly_coefficients_sum_to_fast_pair() {
        let mut rng = sampling::rng(5);
        let x = sampling::matrix(&mut rng, 3, 4);
        let y = sampling::matrix(&mut rng, 3, 4);
        let coeffs = grassmannian_charpoly_coefficients(&x, &y).unwrap();
        assert_eq!(coeffs[0], int(1));
        let total: Scalar = coeffs.iter().cloned().sum();
        let fast = fast_pair(&BigCellPoint::grassmannian(x).unwrap(), &BigCellPoint::grassmannian(y).unwrap()).unwrap();
        assert_eq!(total, fast);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(60))]
        #[test]
        fn fast_matches_naive_in_every_family(seed in proptest::prelude::any::<u64>(), which in 0usize..5) {
            let mut rng = sampling::rng(seed);
            let family = match which {
                0 => {
                    let n = rng.gen_range(2..=7);
                    PairingFamily::Grassmannian { k: rng.gen_range(1..n), n }
                }
                1 => PairingFamily::Spinor { n: rng.gen_range(2..=7) },
                2 => PairingFamily::Lagrangian { n: rng.gen_range(1..=5) },
                3 => PairingFamily::Segre { factors: rng.gen_range(1..=3), p: rng.gen_range(1..=3) },
                _ => PairingFamily::Veronese { degree: rng.gen_range(1..=4), p: rng.gen_range(1..=3) },
            };
            let x = BigCellPoint::random(family, &mut rng).unwrap();
            let y = BigCellPoint::random(family, &mut rng).unwrap();
            let v = expand(&x).unwrap();
            let a = expand_dual(&y).unwrap();
            proptest::prop_assert_eq!(v.leading(), one());
            proptest::prop_assert_eq!(a.leading(), one());
            proptest::prop_assert_eq!(naive_pair(&v, &a).unwrap(), fast_pair(&x, &y).unwrap());
        }
    }
}

