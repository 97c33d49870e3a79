//! Joins and multiplicative joins of linear spaces, the variety `Σ_Γ`
//! attached to a tree circuit, and generic dimensions via Terracini-type
//! tangent spaces.
//!
//! All dimensions here are dimensions of affine cones, i.e. ranks of
//! spanning sets; the projective dimension is one less.

mod circuit;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use circuit::TreeCircuit;

use crate::cominuscule::binomial;
use crate::error::{Error, Result};
use crate::exact::scalar::{int, one, Scalar};
use crate::exact::{rank, Matrix};
use crate::poly::MultiPoly;
use crate::sampling;

/// Linear forms in `vars` variables; with `affine`, constants too
/// (`A_{1,v}`, dimension `v + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSpace {
    pub vars: usize,
    pub affine: bool,
}

impl LinearSpace {
    pub fn dim(&self) -> usize {
        self.vars + usize::from(self.affine)
    }

    fn basis(&self) -> Vec<MultiPoly> {
        let v = self.vars;
        let constant = self.affine.then(|| MultiPoly::constant(v, one()));
        constant.into_iter().chain((0..v).map(|i| MultiPoly::var(v, i))).collect()
    }

    fn form(&self, coeffs: &[Scalar]) -> MultiPoly {
        if self.affine {
            MultiPoly::affine_linear(coeffs)
        } else {
            MultiPoly::linear(coeffs)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyExpr {
    Leaf(LinearSpace),
    MultJoin(Vec<VarietyExpr>),
    Join(Vec<VarietyExpr>),
}

impl VarietyExpr {
    pub fn leaf(vars: usize) -> Self {
        VarietyExpr::Leaf(LinearSpace { vars, affine: false })
    }

    pub fn affine_leaf(vars: usize) -> Self {
        VarietyExpr::Leaf(LinearSpace { vars, affine: true })
    }

    /// `MJ` of `r` copies of the same leaf.
    pub fn chow(vars: usize, r: usize) -> Self {
        VarietyExpr::MultJoin(vec![Self::leaf(vars); r])
    }

    fn first_space(&self) -> LinearSpace {
        match self {
            VarietyExpr::Leaf(s) => *s,
            VarietyExpr::MultJoin(cs) | VarietyExpr::Join(cs) => cs[0].first_space(),
        }
    }

    /// Checks that every node has children and all leaves agree.
    pub fn validate(&self) -> Result<()> {
        if !self.well_formed() {
            return Err(Error::Invalid("join nodes need at least one child".into()));
        }
        self.check(self.first_space())
    }

    fn well_formed(&self) -> bool {
        match self {
            VarietyExpr::Leaf(_) => true,
            VarietyExpr::MultJoin(cs) | VarietyExpr::Join(cs) => !cs.is_empty() && cs.iter().all(|c| c.well_formed()),
        }
    }

    fn check(&self, space: LinearSpace) -> Result<()> {
        match self {
            VarietyExpr::Leaf(s) if *s != space => Err(Error::Invalid("leaves use different linear spaces".into())),
            VarietyExpr::Leaf(_) => Ok(()),
            VarietyExpr::MultJoin(cs) | VarietyExpr::Join(cs) => cs.iter().try_for_each(|c| c.check(space)),
        }
    }

    pub fn vars(&self) -> usize {
        self.first_space().vars
    }

    pub fn is_affine(&self) -> bool {
        self.first_space().affine
    }

    /// Degrees of the polynomials the variety contains.
    pub fn degrees(&self) -> BTreeSet<usize> {
        match self {
            VarietyExpr::Leaf(_) => BTreeSet::from([1]),
            VarietyExpr::Join(cs) => cs.iter().flat_map(|c| c.degrees()).collect(),
            VarietyExpr::MultJoin(cs) => cs.iter().fold(BTreeSet::from([0]), |acc, c| {
                let ds = c.degrees();
                acc.iter().flat_map(|a| ds.iter().map(move |d| a + d)).collect()
            }),
        }
    }

    /// Dimension of the space the variety lives in: `A_{d,v}` in affine mode,
    /// else the sum of `dim S^d V` over the degrees present.
    pub fn ambient_dimension(&self) -> u128 {
        let v = self.vars();
        let ds = self.degrees();
        if self.is_affine() {
            let d = *ds.iter().max().expect("nonempty");
            binomial(v + d, d)
        } else {
            ds.iter().map(|&d| binomial(v + d - 1, d)).sum()
        }
    }

    /// `min(Σ a_j, ambient)` for joins, `min(Σ a_j - (r - 1), ambient)` for
    /// multiplicative joins, with `a_j` the children's expected cone dimensions.
    pub fn expected_dimension(&self) -> u128 {
        let ambient = self.ambient_dimension();
        match self {
            VarietyExpr::Leaf(s) => s.dim() as u128,
            VarietyExpr::Join(cs) => cs.iter().map(|c| c.expected_dimension()).sum::<u128>().min(ambient),
            VarietyExpr::MultJoin(cs) => {
                let sum: u128 = cs.iter().map(|c| c.expected_dimension()).sum();
                (sum + 1 - cs.len() as u128).min(ambient)
            }
        }
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            VarietyExpr::Leaf(_) => 1,
            VarietyExpr::MultJoin(cs) | VarietyExpr::Join(cs) => cs.iter().map(|c| c.num_leaves()).sum(),
        }
    }
}

impl fmt::Display for VarietyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, cs: &[VarietyExpr]| {
            write!(f, "{name}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        };
        match self {
            VarietyExpr::Leaf(s) if s.affine => write!(f, "A"),
            VarietyExpr::Leaf(_) => write!(f, "PV"),
            VarietyExpr::MultJoin(cs) => list(f, "MJ", cs),
            VarietyExpr::Join(cs) => list(f, "J", cs),
        }
    }
}

/// A concrete point of a [`VarietyExpr`]: one linear form per leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointDecomposition {
    Leaf(LinearSpace, MultiPoly),
    MultJoin(Vec<PointDecomposition>),
    Join(Vec<PointDecomposition>),
}

impl PointDecomposition {
    /// The polynomial `p_1 ⋯ p_r` or `p_1 + ⋯ + p_r`, recursively.
    pub fn value(&self) -> MultiPoly {
        match self {
            PointDecomposition::Leaf(_, p) => p.clone(),
            PointDecomposition::MultJoin(cs) => {
                let mut it = cs.iter().map(|c| c.value());
                let first = it.next().expect("nonempty");
                it.fold(first, |acc, p| &acc * &p)
            }
            PointDecomposition::Join(cs) => {
                let mut it = cs.iter().map(|c| c.value());
                let first = it.next().expect("nonempty");
                it.fold(first, |acc, p| acc + p)
            }
        }
    }

    pub fn expr(&self) -> VarietyExpr {
        match self {
            PointDecomposition::Leaf(s, _) => VarietyExpr::Leaf(*s),
            PointDecomposition::MultJoin(cs) => VarietyExpr::MultJoin(cs.iter().map(|c| c.expr()).collect()),
            PointDecomposition::Join(cs) => VarietyExpr::Join(cs.iter().map(|c| c.expr()).collect()),
        }
    }
}

/// Circuit normalization with the circuit's own inputs attached.
///
/// Bottom up, a `+` of two inputs becomes one input (a sum of affine linear
/// forms is one), then chains of equal operations are flattened. An input
/// added to an internal node stays a separate summand. What remains is a tree
/// of `MJ` (`*`) and `J` (`+`) nodes over copies of `A_{1,v}`.
pub fn circuit_decomposition(c: &TreeCircuit, vars: usize) -> Result<PointDecomposition> {
    if c.max_variable() > vars {
        return Err(Error::Invalid(format!("circuit uses x{} with only {vars} variables", c.max_variable())));
    }
    let space = LinearSpace { vars, affine: true };
    Ok(normalize(c, space))
}

fn normalize(c: &TreeCircuit, space: LinearSpace) -> PointDecomposition {
    if let Some(form) = circuit::input_form(c, space.vars) {
        return PointDecomposition::Leaf(space, space.form(&form));
    }
    match c {
        TreeCircuit::Mul(a, b) => {
            let mut factors = Vec::new();
            for child in [normalize(a, space), normalize(b, space)] {
                match child {
                    PointDecomposition::MultJoin(cs) => factors.extend(cs),
                    other => factors.push(other),
                }
            }
            PointDecomposition::MultJoin(factors)
        }
        TreeCircuit::Add(a, b) => match (normalize(a, space), normalize(b, space)) {
            (PointDecomposition::Leaf(_, p), PointDecomposition::Leaf(_, q)) => PointDecomposition::Leaf(space, p + q),
            (l, r) => {
                let mut summands = Vec::new();
                for child in [l, r] {
                    match child {
                        PointDecomposition::Join(cs) => summands.extend(cs),
                        other => summands.push(other),
                    }
                }
                PointDecomposition::Join(summands)
            }
        },
        TreeCircuit::Var(_) | TreeCircuit::Const(_) => unreachable!("inputs handled above"),
    }
}

/// The variety `Σ_Γ` of a circuit over `vars` variables.
pub fn normalize_circuit(c: &TreeCircuit, vars: usize) -> Result<VarietyExpr> {
    Ok(circuit_decomposition(c, vars)?.expr())
}

/// A random point: every leaf gets a nonzero linear form with integer
/// coefficients in `-9..=9`. Deterministic in `seed`.
pub fn sample_point(e: &VarietyExpr, seed: u64) -> PointDecomposition {
    let mut rng = sampling::rng(seed);
    sample_with(e, &mut rng)
}

fn sample_with(e: &VarietyExpr, rng: &mut impl Rng) -> PointDecomposition {
    match e {
        VarietyExpr::Leaf(s) => {
            let coeffs = loop {
                let c: Vec<Scalar> = (0..s.dim()).map(|_| int(rng.gen_range(-9..=9))).collect();
                if c.iter().any(|x| x != &int(0)) {
                    break c;
                }
            };
            PointDecomposition::Leaf(*s, s.form(&coeffs))
        }
        VarietyExpr::MultJoin(cs) => PointDecomposition::MultJoin(cs.iter().map(|c| sample_with(c, rng)).collect()),
        VarietyExpr::Join(cs) => PointDecomposition::Join(cs.iter().map(|c| sample_with(c, rng)).collect()),
    }
}

/// A spanning set of the affine tangent space at the point: all of `V` at a
/// leaf, the Leibniz rule at `MJ` nodes, the sum of the children at `J` nodes.
pub fn tangent_spanning_set(p: &PointDecomposition) -> Vec<MultiPoly> {
    match p {
        PointDecomposition::Leaf(s, _) => s.basis(),
        PointDecomposition::Join(cs) => cs.iter().flat_map(tangent_spanning_set).collect(),
        PointDecomposition::MultJoin(cs) => {
            let values: Vec<MultiPoly> = cs.iter().map(|c| c.value()).collect();
            let mut out = Vec::new();
            for (i, c) in cs.iter().enumerate() {
                let others = values
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(None::<MultiPoly>, |acc, (_, v)| Some(match acc {
                        Some(a) => &a * v,
                        None => v.clone(),
                    }));
                for t in tangent_spanning_set(c) {
                    out.push(match &others {
                        Some(o) => &t * o,
                        None => t,
                    });
                }
            }
            out
        }
    }
}

/// Rank of the coefficient matrix of `polys` over their monomials.
pub fn span_rank(polys: &[MultiPoly]) -> usize {
    let monomials: BTreeMap<&Vec<u32>, usize> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    if polys.is_empty() || monomials.is_empty() {
        return 0;
    }
    let mut m = Matrix::zeros(polys.len(), monomials.len());
    for (r, p) in polys.iter().enumerate() {
        for (e, c) in p.terms() {
            m.set(r, monomials[e], c.clone());
        }
    }
    rank(&m)
}

/// Largest tangent rank over `trials` sampled points (seeds `seed`,
/// `seed + 1`, ...): a lower bound for the generic dimension that is sharp
/// with high probability.
pub fn terracini_rank(e: &VarietyExpr, trials: usize, seed: u64) -> usize {
    (0..trials.max(1) as u64)
        .into_par_iter()
        .map(|t| span_rank(&tangent_spanning_set(&sample_point(e, seed.wrapping_add(t)))))
        .max()
        .unwrap_or(0)
}

/// `rank ≤ (v + 1)(R + 1)` for a circuit with `R` internal nodes.
pub fn vpe_bound_check(e: &VarietyExpr, internal_nodes: usize, vars: usize, trials: usize, seed: u64) -> bool {
    (terracini_rank(e, trials, seed) as u128) <= ((vars + 1) * (internal_nodes + 1)) as u128
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub variety: String,
    pub rank: usize,
    pub expected: u128,
    pub degenerate: bool,
    pub bound_ok: bool,
    /// The circuit's own polynomial is the value of the normalized tree at the
    /// circuit's inputs.
    pub contains_circuit: bool,
}

pub fn analyze_circuit(c: &TreeCircuit, vars: usize, trials: usize, seed: u64) -> Result<JoinReport> {
    let point = circuit_decomposition(c, vars)?;
    let e = point.expr();
    let rank = terracini_rank(&e, trials, seed);
    let expected = e.expected_dimension();
    let bound = ((vars + 1) * (c.internal_nodes() + 1)) as u128;
    Ok(JoinReport {
        variety: e.to_string(),
        rank,
        expected,
        degenerate: (rank as u128) < expected,
        bound_ok: rank as u128 <= bound,
        contains_circuit: point.value() == c.eval(vars)?,
    })
}
