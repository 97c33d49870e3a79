//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exact::scalar::{format_scalar, one, Scalar};

/// A polynomial in `vars` variables, stored as exponent vector -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The variable `x_i`, 0-based.
    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars, "variable {i} out of range for {vars} variables");
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, one());
        p
    }

    /// `c0 + c1 x_1 + ... + cv x_v` from `coeffs = [c0, c1, ..., cv]`.
    pub fn affine_linear(coeffs: &[Scalar]) -> Self {
        let vars = coeffs.len() - 1;
        let mut p = Self::constant(vars, coeffs[0].clone());
        for (i, c) in coeffs[1..].iter().enumerate() {
            p = p + Self::var(vars, i) * c.clone();
        }
        p
    }

    /// `c1 x_1 + ... + cv x_v`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let vars = coeffs.len();
        (0..vars).fold(Self::zero(vars), |acc, i| acc + Self::var(vars, i) * coeffs[i].clone())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        assert_eq!(exps.len(), self.vars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars);
        self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc + t
        })
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable counts");
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.check_vars(&rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Mul<Scalar> for MultiPoly {
    type Output = MultiPoly;
    fn mul(mut self, rhs: Scalar) -> MultiPoly {
        if rhs.is_zero() {
            return MultiPoly::zero(self.vars);
        }
        for c in self.terms.values_mut() {
            *c *= &rhs;
        }
        self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                    .collect();
                match (mono.is_empty(), format_scalar(c).as_str()) {
                    (true, s) => s.to_string(),
                    (false, "1") => mono.join("*"),
                    (false, "-1") => format!("-{}", mono.join("*")),
                    (false, s) => format!("{s}*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Determinant of a square matrix of polynomials by the permutation expansion.
pub fn symbolic_det(entries: &[Vec<MultiPoly>]) -> MultiPoly {
    use itertools::Itertools;
    let n = entries.len();
    let vars = entries.first().and_then(|r| r.first()).map_or(0, MultiPoly::vars);
    let mut out = MultiPoly::zero(vars);
    for perm in (0..n).permutations(n) {
        let mut term = MultiPoly::constant(vars, one());
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &entries[i][j];
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        out = if crate::exact::det::permutation_sign(&perm) > 0 {
            out + term
        } else {
            out - term
        };
    }
    out
}
