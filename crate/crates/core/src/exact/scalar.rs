//! Exact rational scalars.
//!
//! Every numeric value in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `+1` for even `k`, `-1` for odd `k`.
pub fn sign_pow(k: usize) -> Scalar {
    if k % 2 == 0 {
        one()
    } else {
        -one()
    }
}

/// Parses an integer or `p/q` token. Decimal points are rejected.
pub fn parse_scalar(token: &str) -> Result<Scalar> {
    let t = token.trim();
    let bad = || Error::parse(format!("token {t:?}"), "expected an integer or p/q");
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(format!("token {t:?}"), "zero denominator"));
    }
    Ok(Scalar::new(num, den))
}

/// Formats as `p/q`, or `p` when integral.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// The integer value of `s`, if it is integral.
pub fn to_integer(s: &Scalar) -> Option<BigInt> {
    s.is_integer().then(|| s.numer().clone())
}

/// `-1`, `0` or `1`.
pub fn signum(s: &Scalar) -> i32 {
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_scalar("-7").unwrap(), int(-7));
        assert_eq!(parse_scalar("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(format_scalar(&ratio(4, 2)), "2");
        assert_eq!(format_scalar(&ratio(-1, 3)), "-1/3");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("").is_err());
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.denom().is_positive());
        }

        #[test]
        fn format_parse_roundtrip(a in small()) {
            prop_assert_eq!(parse_scalar(&format_scalar(&a)).unwrap(), a);
        }
    }
}
