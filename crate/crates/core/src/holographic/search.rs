//! Experimental search for one global edge ordering under which both
//! transformed products `G` and `R` are sub-Pfaffian vectors. Each local
//! tensor fits on its own; a shared ordering that works for both sides need
//! not exist, because reordering edges changes the signs of sub-Pfaffians.

use itertools::Itertools;
use num_bigint::BigInt;

use super::tensor::fit_coordinates;
use super::{build_incidence_graph, hadamard_transform, local_tensors, pairing_count_with_cap, LocalTensor, NAEFormula, Side};
use crate::cominuscule::spinor_pairing_matrix;
use crate::error::{Error, Result};
use crate::exact::scalar::{one, Scalar};
use crate::exact::{pfaffian, tilde, SkewMatrix};

/// Orderings are enumerated exhaustively, so the search is capped hard.
pub const GLOBAL_SEARCH_MAX_EDGES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalFit {
    /// Position `k` holds edge number `ordering[k]`.
    pub ordering: Vec<usize>,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub z: SkewMatrix,
    pub w: SkewMatrix,
    /// `λ μ Σ_I Pf_I(z) Pf_I(w)`, evaluated as one Pfaffian.
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSearch {
    pub orderings_tried: usize,
    /// Orderings under which `G` alone fits.
    pub primal_fits: usize,
    pub found: Option<GlobalFit>,
    pub count: BigInt,
}

/// Dense product of tensors with disjoint edge sets covering `0..num_edges`,
/// indexed by edge number (edge 0 is the most significant bit).
fn product(tensors: &[LocalTensor], num_edges: usize) -> Vec<Scalar> {
    (0..1usize << num_edges)
        .map(|eps| {
            tensors.iter().fold(one(), |acc, t| {
                let pattern = t
                    .edges()
                    .iter()
                    .fold(0usize, |p, &e| (p << 1) | (eps >> (num_edges - 1 - e) & 1));
                acc * t.get(pattern)
            })
        })
        .collect()
}

fn reorder(pattern: usize, ordering: &[usize], m: usize) -> usize {
    ordering.iter().enumerate().fold(0, |acc, (k, &e)| {
        let b = (pattern >> (m - 1 - k)) & 1;
        acc | (b << (m - 1 - e))
    })
}

pub fn global_ordering_search(f: &NAEFormula) -> Result<GlobalSearch> {
    let graph = build_incidence_graph(f);
    let m = graph.num_edges();
    if m > GLOBAL_SEARCH_MAX_EDGES {
        return Err(Error::Resource {
            what: "edge count for the ordering search",
            got: m,
            cap: GLOBAL_SEARCH_MAX_EDGES,
        });
    }
    let count = pairing_count_with_cap(f, m)?;
    let (vars, clauses) = local_tensors(&graph);
    let g: Vec<LocalTensor> = vars.iter().map(|t| hadamard_transform(t, Side::Primal)).collect();
    let r: Vec<LocalTensor> = clauses.iter().map(|t| hadamard_transform(t, Side::Dual)).collect();
    let big_g = product(&g, m);
    let big_r = product(&r, m);

    let mut search = GlobalSearch {
        orderings_tried: 0,
        primal_fits: 0,
        found: None,
        count,
    };
    for ordering in (0..m).permutations(m) {
        search.orderings_tried += 1;
        let gf = fit_coordinates(m, |p| big_g[reorder(p, &ordering, m)].clone());
        if !gf.success {
            continue;
        }
        search.primal_fits += 1;
        let rf = fit_coordinates(m, |p| big_r[reorder(p, &ordering, m)].clone());
        if !rf.success {
            continue;
        }
        // Σ_I Pf_I(z) Pf_I(w) = Σ_I sgn(I) Pf_I(z̃) Pf_I(w)
        let value = &gf.lambda * &rf.lambda * pfaffian(&spinor_pairing_matrix(&tilde(&gf.z), &rf.z));
        search.found = Some(GlobalFit {
            ordering,
            lambda: gf.lambda,
            mu: rf.lambda,
            z: gf.z,
            w: rf.z,
            value,
        });
        break;
    }
    Ok(search)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_clause_has_a_compatible_ordering() {
        let f = NAEFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        let s = global_ordering_search(&f).unwrap();
        let fit = s.found.expect("three isolated edges always fit");
        assert_eq!(fit.value, Scalar::from_integer(s.count.clone()));
        assert_eq!(s.count, BigInt::from(6));
    }

    #[test]
    fn found_orderings_reproduce_the_count() {
        for clauses in [
            vec![vec![1, 2, 3], vec![1, 2, 4]],
            vec![vec![1, 2], vec![2, 3], vec![3, 1]],
            vec![vec![1, 2, 3], vec![3, 4]],
        ] {
            let f = NAEFormula::new(4, clauses).unwrap();
            let s = global_ordering_search(&f).unwrap();
            assert!(s.primal_fits > 0);
            if let Some(fit) = s.found {
                assert_eq!(fit.value, Scalar::from_integer(s.count));
            }
        }
    }

    #[test]
    fn search_is_capped() {
        let f = NAEFormula::new(3, vec![vec![1, 2, 3]; 3]).unwrap();
        assert!(matches!(global_ordering_search(&f), Err(Error::Resource { .. })));
    }
}
