use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};

/// A conjunction of not-all-equal clauses over `variables` boolean variables.
/// Variable indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NAEFormula {
    variables: usize,
    clauses: Vec<Vec<usize>>,
}

impl NAEFormula {
    pub fn new(variables: usize, clauses: Vec<Vec<usize>>) -> Result<Self> {
        let f = NAEFormula { variables, clauses };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        for (s, clause) in self.clauses.iter().enumerate() {
            if clause.len() < 2 {
                return Err(Error::Invalid(format!(
                    "clause {} has arity {}; NAE clauses need at least 2 literals",
                    s + 1,
                    clause.len()
                )));
            }
            if let Some(&bad) = clause.iter().find(|&&i| i == 0 || i > self.variables) {
                return Err(Error::Invalid(format!(
                    "clause {} mentions variable {bad}, outside 1..={}",
                    s + 1,
                    self.variables
                )));
            }
        }
        Ok(())
    }

    /// Parses `{"variables": n, "clauses": [[1,2,3], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let f: NAEFormula = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    /// Whether the 0/1 assignment (bit `i-1` of `assignment` is `x_i`)
    /// satisfies every clause.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            let first = assignment >> (c[0] - 1) & 1;
            c[1..].iter().any(|&i| assignment >> (i - 1) & 1 != first)
        })
    }

    /// Random formula with distinct variables in each clause.
    pub fn random(
        rng: &mut impl Rng,
        variables: usize,
        clauses: usize,
        arity: std::ops::RangeInclusive<usize>,
    ) -> Result<Self> {
        if *arity.start() < 2 || *arity.end() > variables {
            return Err(Error::Invalid("arity range must lie in 2..=variables".into()));
        }
        let cs = (0..clauses)
            .map(|_| {
                let d = rng.gen_range(arity.clone());
                let mut c = rand::seq::index::sample(rng, variables, d).into_vec();
                c.iter_mut().for_each(|i| *i += 1);
                c
            })
            .collect();
        NAEFormula::new(variables, cs)
    }
}

/// One edge `e_{is}` per occurrence of variable `i` in clause `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub clause: usize,
    pub variable: usize,
    /// Position of this occurrence in the clause, 0-based.
    pub slot: usize,
}

/// The bipartite graph `Γ = (V_x, V_c, E)`. Edges are sorted by
/// `(clause, variable)` and numbered in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    variables: usize,
    clauses: usize,
    edges: Vec<Edge>,
}

impl IncidenceGraph {
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_variables(&self) -> usize {
        self.variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses
    }

    /// Edge numbers at variable `i` (1-based).
    pub fn variable_edges(&self, i: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].variable == i).collect()
    }

    /// Edge numbers at clause `s` (1-based), in slot order.
    pub fn clause_edges(&self, s: usize) -> Vec<usize> {
        let mut es: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].clause == s).collect();
        es.sort_by_key(|&e| self.edges[e].slot);
        es
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.variable == i).count()
    }
}

pub fn build_incidence_graph(f: &NAEFormula) -> IncidenceGraph {
    let mut edges: Vec<Edge> = f
        .clauses
        .iter()
        .enumerate()
        .flat_map(|(s, c)| {
            c.iter().enumerate().map(move |(slot, &variable)| Edge {
                clause: s + 1,
                variable,
                slot,
            })
        })
        .collect();
    edges.sort();
    IncidenceGraph {
        variables: f.variables,
        clauses: f.clauses.len(),
        edges,
    }
}
