use std::fmt;

use num_traits::Zero;

use super::scalar::{format_scalar, parse_scalar, zero, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                super::scalar::one()
            } else {
                zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Result<Self> {
        Matrix::new(rows, cols, vals.iter().map(|&v| super::scalar::int(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        }))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("cannot add matrices of different shapes".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    /// Submatrix on the given 0-based rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.rows).all(|j| *self.get(i, j) == -self.get(j, i).clone())
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Parses the text format: a `rows cols` header followed by row-major
    /// entries (integers or `p/q`), whitespace separated.
    pub fn parse(text: &str) -> Result<Matrix> {
        let mut tokens = text
            .lines()
            .enumerate()
            .flat_map(|(ln, line)| {
                let line = line.split('#').next().unwrap_or("");
                line.split_whitespace()
                    .enumerate()
                    .map(move |(col, t)| (ln + 1, col + 1, t))
            });
        let mut dim = |what: &str| -> Result<usize> {
            let (ln, col, t) = tokens
                .next()
                .ok_or_else(|| Error::parse("end of input", format!("missing {what}")))?;
            t.parse::<usize>()
                .map_err(|_| Error::parse(format!("line {ln}, token {col}"), format!("bad {what} {t:?}")))
        };
        let rows = dim("row count")?;
        let cols = dim("column count")?;
        let mut data = Vec::with_capacity(rows * cols);
        for (ln, col, t) in tokens.by_ref() {
            let v = parse_scalar(t).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(format!("line {ln}, token {col}"), msg),
                other => other,
            })?;
            data.push(v);
        }
        if data.len() != rows * cols {
            return Err(Error::parse(
                "end of input",
                format!("expected {} entries for a {rows}x{cols} matrix, found {}", rows * cols, data.len()),
            ));
        }
        Matrix::new(rows, cols, data)
    }

    /// Reads consecutive matrices from one text stream (used for tangent triples).
    pub fn parse_many(text: &str, count: usize) -> Result<Vec<Matrix>> {
        let tokens: Vec<&str> = text
            .lines()
            .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
            .collect();
        let mut pos = 0;
        let mut out = Vec::with_capacity(count);
        for m in 0..count {
            let header = |k: usize| -> Result<usize> {
                tokens
                    .get(k)
                    .ok_or_else(|| Error::parse(format!("matrix {}", m + 1), "missing header"))?
                    .parse()
                    .map_err(|_| Error::parse(format!("matrix {}, token {}", m + 1, k + 1), "bad dimension"))
            };
            let rows = header(pos)?;
            let cols = header(pos + 1)?;
            let end = pos + 2 + rows * cols;
            if end > tokens.len() {
                return Err(Error::parse(format!("matrix {}", m + 1), "too few entries"));
            }
            let data = tokens[pos + 2..end]
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    parse_scalar(t).map_err(|_| {
                        Error::parse(format!("matrix {}, entry {}", m + 1, k + 1), format!("bad entry {t:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(Matrix::new(rows, cols, data)?);
            pos = end;
        }
        if pos != tokens.len() {
            return Err(Error::parse(format!("token {}", pos + 1), "trailing input"));
        }
        Ok(out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format_scalar(self.get(i, j))).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Skew-symmetric matrix stored by its strict upper triangle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewMatrix {
    n: usize,
    upper: Vec<Scalar>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix {
            n,
            upper: vec![zero(); n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds from `f(i, j)` for `i < j` (0-based).
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(f(i, j));
            }
        }
        SkewMatrix { n, upper }
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_skew() {
            return Err(Error::Dimension("matrix is not skew-symmetric".into()));
        }
        Ok(Self::from_upper_fn(m.rows(), |i, j| m.get(i, j).clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[upper_index(self.n, i, j)].clone(),
            Greater => -self.upper[upper_index(self.n, j, i)].clone(),
            Equal => zero(),
        }
    }

    /// Sets `(i, j)` and `(j, i)` consistently; `i != j`.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_ne!(i, j, "diagonal of a skew matrix is fixed at zero");
        if i < j {
            let k = upper_index(self.n, i, j);
            self.upper[k] = v;
        } else {
            let k = upper_index(self.n, j, i);
            self.upper[k] = -v;
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Principal submatrix on 0-based indices (kept in the given order).
    pub fn principal(&self, idx: &[usize]) -> SkewMatrix {
        SkewMatrix::from_upper_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Zero::is_zero)
    }
}

/// Symmetric matrix stored by its upper triangle including the diagonal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix {
    n: usize,
    upper: Vec<Scalar>,
}

impl SymMatrix {
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                upper.push(f(i, j));
            }
        }
        SymMatrix { n, upper }
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Dimension("matrix is not symmetric".into()));
        }
        Ok(Self::from_upper_fn(m.rows(), |i, j| m.get(i, j).clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.upper[a * (2 * self.n - a + 1) / 2 + (b - a)].clone()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }
}

/// Strictly increasing list of 1-based indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::Index("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Index(format!("{indices:?} is not strictly increasing")));
        }
        Ok(IndexSubset(indices))
    }

    pub fn empty() -> Self {
        IndexSubset(Vec::new())
    }

    /// From 0-based positions (assumed increasing).
    pub fn from_zero_based(idx: &[usize]) -> Self {
        IndexSubset(idx.iter().map(|i| i + 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }

    pub fn max(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.max() > n {
            return Err(Error::Index(format!("{:?} exceeds dimension {n}", self.0)));
        }
        Ok(())
    }
}
