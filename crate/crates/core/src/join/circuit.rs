use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::scalar::{format_scalar, int, parse_scalar, zero, Scalar};
use crate::poly::MultiPoly;

/// A binary tree circuit over `+` and `*` with variable and constant inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeCircuit {
    /// `x_i`, 1-based.
    Var(usize),
    Const(Scalar),
    Add(Box<TreeCircuit>, Box<TreeCircuit>),
    Mul(Box<TreeCircuit>, Box<TreeCircuit>),
}

impl TreeCircuit {
    pub fn add(a: TreeCircuit, b: TreeCircuit) -> Self {
        TreeCircuit::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: TreeCircuit, b: TreeCircuit) -> Self {
        TreeCircuit::Mul(Box::new(a), Box::new(b))
    }

    /// Parses nested arrays `["+", left, right]` / `["*", left, right]` with
    /// leaves `"x3"`, integers, or `"p/q"` strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        Self::from_value(&v, "root")
    }

    fn from_value(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::Array(items) => {
                let [op, l, r] = items.as_slice() else {
                    return Err(Error::parse(path, format!("expected [op, left, right], got {} items", items.len())));
                };
                let left = Self::from_value(l, &format!("{path}[1]"))?;
                let right = Self::from_value(r, &format!("{path}[2]"))?;
                match op.as_str() {
                    Some("+") => Ok(Self::add(left, right)),
                    Some("*") => Ok(Self::mul(left, right)),
                    _ => Err(Error::parse(format!("{path}[0]"), format!("expected \"+\" or \"*\", got {op}"))),
                }
            }
            Value::String(s) => {
                if let Some(i) = s.strip_prefix('x') {
                    match i.parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(TreeCircuit::Var(i)),
                        _ => Err(Error::parse(path, format!("bad variable {s:?}; variables are x1, x2, ..."))),
                    }
                } else {
                    parse_scalar(s).map(TreeCircuit::Const).map_err(|_| {
                        Error::parse(path, format!("expected a variable like \"x3\" or a rational, got {s:?}"))
                    })
                }
            }
            Value::Number(n) => parse_scalar(&n.to_string())
                .map(TreeCircuit::Const)
                .map_err(|_| Error::parse(path, format!("constants must be integers or \"p/q\" strings, got {n}"))),
            other => Err(Error::parse(path, format!("unexpected {other}"))),
        }
    }

    /// Number of `+` and `*` nodes.
    pub fn internal_nodes(&self) -> usize {
        match self {
            TreeCircuit::Var(_) | TreeCircuit::Const(_) => 0,
            TreeCircuit::Add(a, b) | TreeCircuit::Mul(a, b) => 1 + a.internal_nodes() + b.internal_nodes(),
        }
    }

    /// The largest variable index used (0 when there are none).
    pub fn max_variable(&self) -> usize {
        match self {
            TreeCircuit::Var(i) => *i,
            TreeCircuit::Const(_) => 0,
            TreeCircuit::Add(a, b) | TreeCircuit::Mul(a, b) => a.max_variable().max(b.max_variable()),
        }
    }

    /// The computed polynomial in `vars` variables.
    pub fn eval(&self, vars: usize) -> Result<MultiPoly> {
        match self {
            TreeCircuit::Var(i) if *i > vars => Err(Error::Invalid(format!("x{i} used with only {vars} variables"))),
            TreeCircuit::Var(i) => Ok(MultiPoly::var(vars, i - 1)),
            TreeCircuit::Const(c) => Ok(MultiPoly::constant(vars, c.clone())),
            TreeCircuit::Add(a, b) => Ok(a.eval(vars)? + b.eval(vars)?),
            TreeCircuit::Mul(a, b) => Ok(&a.eval(vars)? * &b.eval(vars)?),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TreeCircuit::Var(i) => Value::String(format!("x{i}")),
            TreeCircuit::Const(c) => Value::String(format_scalar(c)),
            TreeCircuit::Add(a, b) => Value::Array(vec!["+".into(), a.to_json(), b.to_json()]),
            TreeCircuit::Mul(a, b) => Value::Array(vec!["*".into(), a.to_json(), b.to_json()]),
        }
    }

    /// Random circuit with exactly `internal` operation nodes over `vars`
    /// variables; about one leaf in five is a small constant.
    pub fn random(rng: &mut impl Rng, internal: usize, vars: usize) -> Self {
        if internal == 0 {
            return if rng.gen_bool(0.2) {
                let c = loop {
                    let c = rng.gen_range(-3i64..=3);
                    if c != 0 {
                        break c;
                    }
                };
                TreeCircuit::Const(int(c))
            } else {
                TreeCircuit::Var(rng.gen_range(1..=vars))
            };
        }
        let left = rng.gen_range(0..internal);
        let a = Self::random(rng, left, vars);
        let b = Self::random(rng, internal - 1 - left, vars);
        if rng.gen_bool(0.5) {
            Self::add(a, b)
        } else {
            Self::mul(a, b)
        }
    }
}

/// The affine linear form of an input node: `[c0, c1, ..., cv]`.
pub(crate) fn input_form(c: &TreeCircuit, vars: usize) -> Option<Vec<Scalar>> {
    let mut form = vec![zero(); vars + 1];
    match c {
        TreeCircuit::Var(i) => form[*i] = int(1),
        TreeCircuit::Const(k) => form[0] = k.clone(),
        _ => return None,
    }
    Some(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::ratio;

    #[test]
    fn parse_and_eval() {
        let c = TreeCircuit::from_json(r#"["+", ["*", "x1", "x2"], ["*", "3/2", "x1"]]"#).unwrap();
        assert_eq!(c.internal_nodes(), 3);
        assert_eq!(c.max_variable(), 2);
        let p = c.eval(2).unwrap();
        assert_eq!(p.eval(&[int(2), int(5)]), int(13));
        assert_eq!(TreeCircuit::from_json(&c.to_json().to_string()).unwrap(), c);
        assert_eq!(TreeCircuit::from_json("7").unwrap(), TreeCircuit::Const(int(7)));
        assert_eq!(TreeCircuit::from_json("\"-1/3\"").unwrap(), TreeCircuit::Const(ratio(-1, 3)));
    }

    #[test]
    fn parse_errors_carry_paths() {
        let e = TreeCircuit::from_json(r#"["+", "x1", ["-", "x2", "x3"]]"#).unwrap_err();
        assert!(matches!(e, Error::Parse { ref at, .. } if at == "root[2][0]"));
        assert!(TreeCircuit::from_json(r#"["+", "x0", "x1"]"#).is_err());
        assert!(TreeCircuit::from_json(r#"["+", "x1"]"#).is_err());
        assert!(TreeCircuit::from_json(r#"["+", "x1", 1.5]"#).is_err());
        assert!(matches!(TreeCircuit::from_json("[\"+\",\n"), Err(Error::Parse { .. })));
        assert!(TreeCircuit::Var(3).eval(2).is_err());
    }

    #[test]
    fn random_sizes() {
        let mut rng = crate::sampling::rng(2);
        for r in 0..=8 {
            let c = TreeCircuit::random(&mut rng, r, 3);
            assert_eq!(c.internal_nodes(), r);
            assert!(c.max_variable() <= 3);
        }
    }
}
