//! #NAE-SAT as a pairing `⟨G, R⟩` between a product of variable tensors and a
//! product of clause tensors, the Hadamard change of basis that moves every
//! local tensor onto a spinor variety, and exact contraction of the pairing.

mod formula;
mod search;
mod tensor;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

pub use formula::{build_incidence_graph, Edge, IncidenceGraph, NAEFormula};
pub use search::{global_ordering_search, GlobalFit, GlobalSearch, GLOBAL_SEARCH_MAX_EDGES};
pub use tensor::{
    hadamard, hadamard_transform, hadamard_transform_integral, nae_gadget, spinor_fit,
    spinor_fit_random_basis, variable_gadget, LocalTensor, Side, SpinorFit,
};

use crate::error::{Error, Result};
use crate::exact::scalar::{to_integer, Scalar};
use crate::exact::Matrix;

pub const DEFAULT_MAX_EDGES: usize = 24;
pub const BRUTE_FORCE_MAX_VARIABLES: usize = 30;

/// The edge cap for `2^|E|` contractions: `COMINPAIR_MAX_EDGES` if set and
/// valid, else [`DEFAULT_MAX_EDGES`].
pub fn edge_cap() -> usize {
    std::env::var("COMINPAIR_MAX_EDGES")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EDGES)
}

/// `g_i` for every variable and `r_s` for every clause, labelled by edge number.
pub fn local_tensors(graph: &IncidenceGraph) -> (Vec<LocalTensor>, Vec<LocalTensor>) {
    let vars = (1..=graph.num_variables())
        .map(|i| {
            let es = graph.variable_edges(i);
            tensor::variable_tensor(es.len()).relabel(es).expect("arity matches")
        })
        .collect();
    let clauses = (1..=graph.num_clauses())
        .map(|s| {
            let es = graph.clause_edges(s);
            nae_gadget(es.len()).and_then(|t| t.relabel(es)).expect("validated arity")
        })
        .collect();
    (vars, clauses)
}

/// `Σ_ε Π_t t(ε|edges(t))` over all `ε ∈ {0,1}^num_edges`.
pub fn contract(tensors: &[LocalTensor], num_edges: usize) -> Scalar {
    let mut denominator = BigInt::one();
    let mut scaled = Vec::with_capacity(tensors.len());
    for t in tensors {
        let lcm = t.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = t.coords().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        denominator *= &lcm;
        scaled.push((t.edges().to_vec(), ints));
    }
    let total = contract_i128(&scaled, num_edges).unwrap_or_else(|| contract_big(&scaled, num_edges));
    Scalar::new(total, denominator)
}

fn pattern_of(edges: &[usize], eps: u64) -> usize {
    edges.iter().fold(0usize, |acc, &e| (acc << 1) | ((eps >> e) & 1) as usize)
}

const CHUNK_BITS: usize = 12;

fn chunks(num_edges: usize) -> (u64, u64) {
    let total = 1u64 << num_edges;
    let per = 1u64 << CHUNK_BITS.min(num_edges);
    (total / per, per)
}

fn contract_i128(scaled: &[(Vec<usize>, Vec<BigInt>)], num_edges: usize) -> Option<BigInt> {
    let small: Vec<(&[usize], Vec<i128>)> = scaled
        .iter()
        .map(|(e, c)| Some((e.as_slice(), c.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>()?)))
        .collect::<Option<_>>()?;
    let (count, per) = chunks(num_edges);
    let partial: Vec<Option<i128>> = (0..count)
        .into_par_iter()
        .map(|c| {
            let mut sum = 0i128;
            'eps: for eps in c * per..(c + 1) * per {
                let mut term = 1i128;
                for (edges, coords) in &small {
                    let v = coords[pattern_of(edges, eps)];
                    if v == 0 {
                        continue 'eps;
                    }
                    term = term.checked_mul(v)?;
                }
                sum = sum.checked_add(term)?;
            }
            Some(sum)
        })
        .collect();
    partial
        .into_iter()
        .try_fold(BigInt::zero(), |acc, p| Some(acc + BigInt::from(p?)))
}

fn contract_big(scaled: &[(Vec<usize>, Vec<BigInt>)], num_edges: usize) -> BigInt {
    let (count, per) = chunks(num_edges);
    (0..count)
        .into_par_iter()
        .map(|c| {
            let mut sum = BigInt::zero();
            'eps: for eps in c * per..(c + 1) * per {
                let mut term = BigInt::one();
                for (edges, coords) in scaled {
                    let v = &coords[pattern_of(edges, eps)];
                    if v.is_zero() {
                        continue 'eps;
                    }
                    term *= v;
                }
                sum += term;
            }
            sum
        })
        .reduce(BigInt::zero, |a, b| a + b)
}

fn check_cap(graph: &IncidenceGraph, cap: usize) -> Result<()> {
    if graph.num_edges() > cap {
        return Err(Error::Resource {
            what: "edge count",
            got: graph.num_edges(),
            cap,
        });
    }
    Ok(())
}

fn as_count(v: Scalar) -> Result<BigInt> {
    to_integer(&v).ok_or_else(|| Error::Invalid(format!("pairing value {v} is not an integer")))
}

/// `⟨G, R⟩` after applying `g` to every primal edge factor and `g^{-T}` to
/// every dual one.
pub fn pairing_value_in_basis(f: &NAEFormula, g: &Matrix, cap: usize) -> Result<Scalar> {
    let graph = build_incidence_graph(f);
    check_cap(&graph, cap)?;
    let (vars, clauses) = local_tensors(&graph);
    let mut all = Vec::with_capacity(vars.len() + clauses.len());
    for t in &vars {
        all.push(t.basis_change(g, Side::Primal)?);
    }
    for t in &clauses {
        all.push(t.basis_change(g, Side::Dual)?);
    }
    Ok(contract(&all, graph.num_edges()))
}

/// Number of NAE-satisfying assignments as the contraction `⟨G, R⟩`.
pub fn pairing_count(f: &NAEFormula) -> Result<BigInt> {
    pairing_count_with_cap(f, edge_cap())
}

pub fn pairing_count_with_cap(f: &NAEFormula, cap: usize) -> Result<BigInt> {
    let graph = build_incidence_graph(f);
    check_cap(&graph, cap)?;
    let (mut all, clauses) = local_tensors(&graph);
    all.extend(clauses);
    as_count(contract(&all, graph.num_edges()))
}

/// The same count after the Hadamard basis change on both sides.
pub fn pairing_count_transformed(f: &NAEFormula) -> Result<BigInt> {
    pairing_count_transformed_with_cap(f, edge_cap())
}

pub fn pairing_count_transformed_with_cap(f: &NAEFormula, cap: usize) -> Result<BigInt> {
    as_count(pairing_value_in_basis(f, &hadamard(), cap)?)
}

/// Direct enumeration of the `2^n` assignments.
pub fn brute_force_count(f: &NAEFormula) -> Result<u64> {
    let n = f.variables();
    if n > BRUTE_FORCE_MAX_VARIABLES {
        return Err(Error::Resource {
            what: "variable count",
            got: n,
            cap: BRUTE_FORCE_MAX_VARIABLES,
        });
    }
    Ok((0..1u64 << n)
        .into_par_iter()
        .filter(|&a| f.satisfied_by(a))
        .count() as u64)
}
