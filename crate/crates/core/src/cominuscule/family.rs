use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// The five big-cell pairing families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairingFamily {
    /// `G(k, n)` in its Plücker embedding; points are `k x (n-k)` matrices.
    Grassmannian { k: usize, n: usize },
    /// The spinor variety of `Spin_2n`; points are `n x n` skew matrices.
    Spinor { n: usize },
    /// The Lagrangian Grassmannian `G_Lag(n, 2n)`; points are symmetric `n x n`.
    Lagrangian { n: usize },
    /// Segre product of `factors` copies; points are `p x factors` matrices.
    Segre { factors: usize, p: usize },
    /// Degree-`degree` Veronese; points are length-`p` vectors.
    Veronese { degree: usize, p: usize },
}

impl PairingFamily {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            PairingFamily::Grassmannian { k, n } => k >= 1 && k < n,
            PairingFamily::Spinor { n } => n >= 2,
            PairingFamily::Lagrangian { n } => n >= 1,
            PairingFamily::Segre { factors, p } => factors >= 1 && p >= 1,
            PairingFamily::Veronese { degree, p } => degree >= 1 && p >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension(format!("invalid family parameters {self}")))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PairingFamily::Grassmannian { .. } => "grassmannian",
            PairingFamily::Spinor { .. } => "spinor",
            PairingFamily::Lagrangian { .. } => "lagrangian",
            PairingFamily::Segre { .. } => "segre",
            PairingFamily::Veronese { .. } => "veronese",
        }
    }

    /// `dim V` of the representation the closed orbit lives in.
    pub fn ambient_dimension(&self) -> u128 {
        match *self {
            PairingFamily::Grassmannian { k, n } => binomial(n, k),
            PairingFamily::Spinor { n } => 1u128 << (n - 1),
            PairingFamily::Lagrangian { n } => {
                binomial(2 * n, n) - if n >= 2 { binomial(2 * n, n - 2) } else { 0 }
            }
            PairingFamily::Segre { factors, p } => ((p + 1) as u128).pow(factors as u32),
            PairingFamily::Veronese { degree, p } => binomial(degree + p, degree),
        }
    }

    /// Every coordinate key of the expanded vector, in canonical order.
    pub fn keys(&self) -> Vec<IndexKey> {
        let mut keys: Vec<IndexKey> = match *self {
            PairingFamily::Grassmannian { k, n } => minor_keys(k, n - k),
            PairingFamily::Lagrangian { n } => minor_keys(n, n),
            PairingFamily::Spinor { n } => (0..=n)
                .step_by(2)
                .flat_map(|r| (1..=n).combinations(r))
                .map(|rows| IndexKey { rows, cols: Vec::new() })
                .collect(),
            PairingFamily::Segre { factors, p } => {
                let mut keys = vec![IndexKey::empty()];
                for q in 1..=factors {
                    for cols in (1..=factors).combinations(q) {
                        for rows in (0..q).map(|_| 1..=p).multi_cartesian_product() {
                            keys.push(IndexKey { rows, cols: cols.clone() });
                        }
                    }
                }
                keys
            }
            PairingFamily::Veronese { degree, p } => (0..=degree)
                .flat_map(|q| (1..=p).combinations_with_replacement(q))
                .map(|rows| IndexKey { rows, cols: Vec::new() })
                .collect(),
        };
        keys.sort();
        keys
    }
}

fn minor_keys(rows: usize, cols: usize) -> Vec<IndexKey> {
    (0..=rows.min(cols))
        .flat_map(|q| {
            (1..=rows)
                .combinations(q)
                .cartesian_product((1..=cols).combinations(q).collect::<Vec<_>>())
                .map(|(rows, cols)| IndexKey { rows, cols })
        })
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl fmt::Display for PairingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PairingFamily::Grassmannian { k, n } => write!(f, "grassmannian({k},{n})"),
            PairingFamily::Spinor { n } => write!(f, "spinor({n})"),
            PairingFamily::Lagrangian { n } => write!(f, "lagrangian({n})"),
            PairingFamily::Segre { factors, p } => write!(f, "segre({factors},{p})"),
            PairingFamily::Veronese { degree, p } => write!(f, "veronese({degree},{p})"),
        }
    }
}

/// Family names as accepted on the command line; sizes come from the point
/// files, except the Veronese degree which is written `veronese:<degree>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Grassmannian,
    Spinor,
    Lagrangian,
    Segre,
    Veronese { degree: usize },
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "grassmannian" => Ok(FamilyKind::Grassmannian),
            "spinor" => Ok(FamilyKind::Spinor),
            "lagrangian" => Ok(FamilyKind::Lagrangian),
            "segre" => Ok(FamilyKind::Segre),
            other => {
                if let Some(d) = other.strip_prefix("veronese:") {
                    let degree = d
                        .parse()
                        .map_err(|_| Error::parse("family", format!("bad Veronese degree {d:?}")))?;
                    Ok(FamilyKind::Veronese { degree })
                } else {
                    Err(Error::parse(
                        "family",
                        format!("unknown family {s:?} (grassmannian, spinor, lagrangian, segre, veronese:<degree>)"),
                    ))
                }
            }
        }
    }
}

/// Coordinate key. Minor families: `(I, S)` row and column sets. Spinor: even
/// `I`, empty `S`. Segre: `S` the factors used, `I` the basis index chosen in
/// each. Veronese: `I` the weakly increasing monomial, empty `S`.
/// All indices are 1-based. Ordered by `(|I|, I, S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexKey {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl IndexKey {
    pub fn empty() -> Self {
        IndexKey {
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && self.cols.is_empty()
    }
}

impl Ord for IndexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows
            .len()
            .cmp(&other.rows.len())
            .then_with(|| self.rows.cmp(&other.rows))
            .then_with(|| self.cols.cmp(&other.cols))
    }
}

impl PartialOrd for IndexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_counts_match_dimensions() {
        assert_eq!(PairingFamily::Grassmannian { k: 2, n: 4 }.keys().len(), 6);
        assert_eq!(PairingFamily::Grassmannian { k: 3, n: 7 }.keys().len(), 35);
        assert_eq!(PairingFamily::Spinor { n: 4 }.keys().len(), 8);
        assert_eq!(PairingFamily::Spinor { n: 5 }.keys().len(), 16);
        assert_eq!(PairingFamily::Segre { factors: 3, p: 2 }.keys().len(), 27);
        assert_eq!(PairingFamily::Veronese { degree: 3, p: 2 }.keys().len(), 10);
        // redundant minors of a symmetric matrix: all C(2n, n) of them
        assert_eq!(PairingFamily::Lagrangian { n: 3 }.keys().len(), 20);
        assert_eq!(PairingFamily::Lagrangian { n: 3 }.ambient_dimension(), 14);
    }

    #[test]
    fn keys_are_sorted_and_start_empty() {
        for fam in [
            PairingFamily::Grassmannian { k: 2, n: 5 },
            PairingFamily::Spinor { n: 6 },
            PairingFamily::Segre { factors: 2, p: 3 },
            PairingFamily::Veronese { degree: 2, p: 3 },
        ] {
            let keys = fam.keys();
            assert!(keys[0].is_empty());
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn grassmannian_key_order() {
        let keys = PairingFamily::Grassmannian { k: 2, n: 4 }.keys();
        let shown: Vec<String> = keys.iter().map(ToString::to_string).collect();
        assert_eq!(
            shown,
            ["([],[])", "([1],[1])", "([1],[2])", "([2],[1])", "([2],[2])", "([1, 2],[1, 2])"]
        );
    }

    #[test]
    fn family_validation_and_parsing() {
        assert!(PairingFamily::Grassmannian { k: 0, n: 3 }.validate().is_err());
        assert!(PairingFamily::Grassmannian { k: 3, n: 3 }.validate().is_err());
        assert!(PairingFamily::Spinor { n: 1 }.validate().is_err());
        assert_eq!("Spinor".parse::<FamilyKind>().unwrap(), FamilyKind::Spinor);
        assert_eq!(
            "veronese:4".parse::<FamilyKind>().unwrap(),
            FamilyKind::Veronese { degree: 4 }
        );
        assert!("veronese".parse::<FamilyKind>().is_err());
        assert!("e6".parse::<FamilyKind>().is_err());
    }
}
