use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::scalar::{int, one, zero, Scalar};
use crate::exact::{sub_pfaffian, IndexSubset, Matrix, SkewMatrix};
use crate::sampling;

/// A tensor in `A_{e_1} ⊗ ... ⊗ A_{e_d}`, `A_e = C^2`, stored densely.
///
/// Coordinate `k` is the bit pattern `ε` with the first edge as the most
/// significant bit: `k = ε_1 2^(d-1) + ... + ε_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTensor {
    edges: Vec<usize>,
    coords: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Vectors in `A`: the basis change acts by `T`.
    Primal,
    /// Covectors in `A*`: the basis change acts by `T^{-T} = T/2`.
    Dual,
}

impl LocalTensor {
    pub fn new(edges: Vec<usize>, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != 1usize << edges.len() {
            return Err(Error::Dimension(format!(
                "{} coordinates for {} edges",
                coords.len(),
                edges.len()
            )));
        }
        Ok(LocalTensor { edges, coords })
    }

    fn from_pattern(d: usize, f: impl Fn(usize) -> Scalar) -> Self {
        LocalTensor {
            edges: (0..d).collect(),
            coords: (0..1usize << d).map(f).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn get(&self, pattern: usize) -> &Scalar {
        &self.coords[pattern]
    }

    /// The same tensor attached to different edge labels.
    pub fn relabel(mut self, edges: Vec<usize>) -> Result<Self> {
        if edges.len() != self.edges.len() {
            return Err(Error::Dimension("relabel must keep the arity".into()));
        }
        self.edges = edges;
        Ok(self)
    }

    pub fn scale(&self, s: &Scalar) -> LocalTensor {
        LocalTensor {
            edges: self.edges.clone(),
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Applies the 2x2 matrix `g` to every tensor factor.
    pub fn apply_each(&self, g: &Matrix) -> Result<LocalTensor> {
        if g.rows() != 2 || g.cols() != 2 {
            return Err(Error::Dimension("edge basis change must be 2x2".into()));
        }
        let d = self.arity();
        let mut coords = self.coords.clone();
        for k in 0..d {
            let bit = 1usize << (d - 1 - k);
            for base in (0..coords.len()).filter(|i| i & bit == 0) {
                let (a, b) = (coords[base].clone(), coords[base | bit].clone());
                coords[base] = g.get(0, 0) * &a + g.get(0, 1) * &b;
                coords[base | bit] = g.get(1, 0) * &a + g.get(1, 1) * &b;
            }
        }
        Ok(LocalTensor {
            edges: self.edges.clone(),
            coords,
        })
    }

    /// Applies `g` on the primal side or `g^{-T}` on the dual side, so that
    /// pairings between the two sides are unchanged. `g` must be invertible.
    pub fn basis_change(&self, g: &Matrix, side: Side) -> Result<LocalTensor> {
        match side {
            Side::Primal => {
                inverse_transpose_2x2(g)?;
                self.apply_each(g)
            }
            Side::Dual => self.apply_each(&inverse_transpose_2x2(g)?),
        }
    }

    /// Reorders the edges: position `k` of the result is old position `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> LocalTensor {
        let d = self.arity();
        let coords = (0..self.coords.len())
            .map(|new| {
                let old = (0..d).fold(0, |acc, k| {
                    let b = (new >> (d - 1 - k)) & 1;
                    acc | (b << (d - 1 - perm[k]))
                });
                self.coords[old].clone()
            })
            .collect();
        LocalTensor {
            edges: perm.iter().map(|&k| self.edges[k]).collect(),
            coords,
        }
    }
}

pub fn hadamard() -> Matrix {
    Matrix::from_i64(2, 2, &[1, 1, 1, -1]).expect("2x2")
}

fn inverse_transpose_2x2(g: &Matrix) -> Result<Matrix> {
    let det = g.get(0, 0) * g.get(1, 1) - g.get(0, 1) * g.get(1, 0);
    if det.is_zero() {
        return Err(Error::Singular("edge basis change is not invertible".into()));
    }
    // (g^{-1})ᵀ = [[d, -c], [-b, a]] / det
    Matrix::from_rows(vec![
        vec![g.get(1, 1) / &det, -g.get(1, 0) / &det],
        vec![-g.get(0, 1) / &det, g.get(0, 0) / &det],
    ])
}

/// `T = [[1,1],[1,-1]]` on every factor (primal) or `T/2` (dual).
pub fn hadamard_transform(t: &LocalTensor, side: Side) -> LocalTensor {
    t.basis_change(&hadamard(), side).expect("T is invertible")
}

/// The dual transform scaled by `2^d`, so that integral tensors stay integral.
/// Returns the tensor and the scale.
pub fn hadamard_transform_integral(t: &LocalTensor) -> (LocalTensor, Scalar) {
    let scale = int(1i64 << t.arity());
    (hadamard_transform(t, Side::Dual).scale(&scale), scale)
}

/// `g_i`: 1 at the all-zeros and all-ones patterns.
pub fn variable_gadget(d: usize) -> Result<LocalTensor> {
    if d == 0 {
        return Err(Error::Invalid("variable gadget needs degree at least 1".into()));
    }
    Ok(variable_tensor(d))
}

/// Degree 0 is allowed here: an isolated variable is the scalar 2.
pub(crate) fn variable_tensor(d: usize) -> LocalTensor {
    let full = (1usize << d) - 1;
    if d == 0 {
        return LocalTensor::from_pattern(0, |_| int(2));
    }
    LocalTensor::from_pattern(d, |k| if k == 0 || k == full { one() } else { zero() })
}

/// `r_s`: 1 at every pattern except all-zeros and all-ones.
pub fn nae_gadget(d: usize) -> Result<LocalTensor> {
    if d < 2 {
        return Err(Error::Invalid(format!("NAE clause needs arity at least 2, got {d}")));
    }
    let full = (1usize << d) - 1;
    Ok(LocalTensor::from_pattern(d, |k| if k == 0 || k == full { zero() } else { one() }))
}

/// Result of fitting a tensor as `λ · sPf(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorFit {
    pub lambda: Scalar,
    pub z: SkewMatrix,
    pub success: bool,
    /// The first coordinate that does not fit, as a pattern of edge positions.
    pub violation: Option<String>,
}

fn pattern_positions(pattern: usize, d: usize) -> Vec<usize> {
    (0..d).filter(|k| pattern >> (d - 1 - k) & 1 == 1).collect()
}

/// Tries to write `t` as `λ (Pf_I(z))_I` with `I` the set bits of each pattern.
pub fn spinor_fit(t: &LocalTensor) -> SpinorFit {
    fit_coordinates(t.arity(), |k| t.coords[k].clone())
}

/// [`spinor_fit`] over a coordinate function, read lazily so that a failing
/// fit stops at the first bad coordinate.
pub(crate) fn fit_coordinates(d: usize, coord: impl Fn(usize) -> Scalar) -> SpinorFit {
    let lambda = coord(0);
    if lambda.is_zero() {
        return SpinorFit {
            lambda,
            z: SkewMatrix::zeros(d),
            success: false,
            violation: Some("not in the big cell: the all-zeros coordinate is 0".into()),
        };
    }
    let bit = |k: usize| 1usize << (d - 1 - k);
    let z = SkewMatrix::from_upper_fn(d, |i, j| coord(bit(i) | bit(j)) / &lambda);
    // by weight, then lexicographically by position set
    let order = (0..1usize << d).sorted_by_key(|&k| (k.count_ones(), std::cmp::Reverse(k)));
    for pattern in order {
        let pos = pattern_positions(pattern, d);
        let expect = if pos.len() % 2 == 1 {
            zero()
        } else {
            let idx = IndexSubset::from_zero_based(&pos);
            &lambda * sub_pfaffian(&z, &idx).expect("even index set")
        };
        let actual = coord(pattern);
        if expect != actual {
            return SpinorFit {
                lambda,
                z,
                success: false,
                violation: Some(format!(
                    "coordinate at positions {:?} is {} but the fit gives {}",
                    pos.iter().map(|p| p + 1).collect_vec(),
                    actual,
                    expect
                )),
            };
        }
    }
    SpinorFit {
        lambda,
        z,
        success: true,
        violation: None,
    }
}

/// Applies random invertible edge bases until a fit succeeds. Returns the
/// basis `g` (acting on the primal side) and the fit.
pub fn spinor_fit_random_basis(
    t: &LocalTensor,
    side: Side,
    rng: &mut impl Rng,
    attempts: usize,
) -> Option<(Matrix, SpinorFit)> {
    for _ in 0..attempts {
        let g = sampling::matrix(rng, 2, 2);
        let Ok(moved) = t.basis_change(&g, side) else {
            continue;
        };
        let fit = spinor_fit(&moved);
        if fit.success {
            return Some((g, fit));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::ratio;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn gadget_patterns() {
        assert_eq!(variable_gadget(1).unwrap().coords(), ints(&[1, 1]));
        assert_eq!(variable_gadget(2).unwrap().coords(), ints(&[1, 0, 0, 1]));
        assert_eq!(variable_gadget(3).unwrap().coords(), ints(&[1, 0, 0, 0, 0, 0, 0, 1]));
        assert!(variable_gadget(0).is_err());
        assert_eq!(nae_gadget(2).unwrap().coords(), ints(&[0, 1, 1, 0]));
        let g4 = nae_gadget(4).unwrap();
        assert_eq!(g4.coords().iter().filter(|c| !c.is_zero()).count(), 14);
        assert!(nae_gadget(1).is_err());
    }

    #[test]
    fn transformed_displays() {
        let g = hadamard_transform(&variable_gadget(3).unwrap(), Side::Primal);
        assert_eq!(g.coords(), ints(&[2, 0, 0, 2, 0, 2, 2, 0]));
        let (r, scale) = hadamard_transform_integral(&nae_gadget(3).unwrap());
        assert_eq!(scale, int(8));
        assert_eq!(r.coords(), ints(&[6, 0, 0, -2, 0, -2, -2, 0]));
    }

    #[test]
    fn primal_twice_scales_by_two_per_edge() {
        let t = nae_gadget(4).unwrap();
        let twice = hadamard_transform(&hadamard_transform(&t, Side::Primal), Side::Primal);
        assert_eq!(twice, t.scale(&int(16)));
        let back = hadamard_transform(&hadamard_transform(&t, Side::Primal), Side::Dual);
        assert_eq!(back.coords(), t.coords());
    }

    #[test]
    fn fits_of_transformed_gadgets() {
        let g = spinor_fit(&hadamard_transform(&variable_gadget(3).unwrap(), Side::Primal));
        assert!(g.success);
        assert_eq!(g.lambda, int(2));
        assert!((0..3).all(|i| (i + 1..3).all(|j| g.z.get(i, j) == int(1))));

        let (r, _) = hadamard_transform_integral(&nae_gadget(3).unwrap());
        let fit = spinor_fit(&r);
        assert!(fit.success);
        assert_eq!(fit.lambda, int(6));
        assert_eq!(fit.z.get(0, 2), ratio(-1, 3));

        let raw = spinor_fit(&nae_gadget(3).unwrap());
        assert!(!raw.success);
        assert!(raw.violation.unwrap().contains("big cell"));
    }

    #[test]
    fn wide_nae_gadgets_do_not_fit() {
        // λ z² > 0 on every 4-set, while the coordinate is -2
        for d in 4..=6 {
            let (r, _) = hadamard_transform_integral(&nae_gadget(d).unwrap());
            let fit = spinor_fit(&r);
            assert!(!fit.success, "arity {d}");
            assert!(fit.violation.unwrap().contains("[1, 2, 3, 4]"));
        }
    }

    #[test]
    fn permute_moves_bits() {
        let t = LocalTensor::new(vec![10, 11], ints(&[1, 2, 3, 4])).unwrap();
        let s = t.permute(&[1, 0]);
        assert_eq!(s.edges(), &[11, 10]);
        assert_eq!(s.coords(), ints(&[1, 3, 2, 4]));
    }

    #[test]
    fn random_basis_retry_returns_checked_fits() {
        let mut rng = sampling::rng(1);
        let t = variable_gadget(2).unwrap();
        if let Some((g, fit)) = spinor_fit_random_basis(&t, Side::Primal, &mut rng, 20) {
            assert!(fit.success);
            assert_eq!(spinor_fit(&t.basis_change(&g, Side::Primal).unwrap()), fit);
        }
    }

    #[test]
    fn singular_bases_are_rejected() {
        // a rank-one basis would collapse any tensor onto a trivially fitting one
        let g = Matrix::from_i64(2, 2, &[1, 2, 0, 0]).unwrap();
        let t = nae_gadget(4).unwrap();
        assert!(matches!(t.basis_change(&g, Side::Primal), Err(Error::Singular(_))));
        assert!(matches!(t.basis_change(&g, Side::Dual), Err(Error::Singular(_))));
    }
}
