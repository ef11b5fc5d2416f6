//! The scalar type and its string form.
//!
//! Rationals travel as strings: `"p/q"` with `q > 0` in lowest terms, or `"p"`
//! when the denominator is one. This keeps JSON lossless.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"`, reducing to lowest terms.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical string form; `Ratio` already prints `p` for integral values.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Serde adapter for fields holding a single `Rational`.
pub mod serde_str {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse("3/-6").unwrap(), frac(-1, 2));
        assert_eq!(format(&parse("3/-6").unwrap()), "-1/2");
        assert_eq!(format(&parse("10/5").unwrap()), "2");
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
        assert!(parse("").is_err());
    }
}
