//! Machine-width exact rationals and their canonical text form.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use crate::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn to_canonical_string(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<i64>().map(int).map_err(|_| bad()),
    }
}

pub(crate) fn narrow(q: &BigRational) -> Result<Rational> {
    let n = q.numer().to_i64();
    let d = q.denom().to_i64();
    match (n, d) {
        (Some(n), Some(d)) => Ok(Rational::new(n, d)),
        _ => Err(Error::Consistency(format!("rational {q} exceeds 64-bit range"))),
    }
}

pub(crate) fn widen(q: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// Serde adapter writing a [`Rational`] as its canonical string.
pub mod serde_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_canonical_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(to_canonical_string(&frac(4, 6)), "2/3");
        assert_eq!(to_canonical_string(&frac(-10, 5)), "-2");
        assert_eq!(to_canonical_string(&int(0)), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["2/3", "-2", "0", "7/-14"] {
            let q = parse(s).unwrap();
            assert_eq!(parse(&to_canonical_string(&q)).unwrap(), q);
        }
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
