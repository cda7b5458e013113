//! Exact rationals backed by arbitrary precision integers.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational as Rational;

/// Builds `num/den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form, always `num/den` with a positive denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `n`, `-n`, `n/d` and `-n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// `x^e` for any integer `e`; fails only for `0^e` with `e < 0`.
pub fn pow_i(x: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        return Ok(pow_u(x, e as u64));
    }
    if x.is_zero() {
        return Err(Error::PoleHit("negative power of zero".into()));
    }
    Ok(pow_u(&x.recip(), e.unsigned_abs()))
}

fn pow_u(x: &Rational, mut e: u64) -> Rational {
    let mut base = x.clone();
    let mut acc = Rational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Checked division used wherever a denominator may vanish at a sample point.
pub fn checked_div(num: &Rational, den: &Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        Err(Error::PoleHit(what.to_string()))
    } else {
        Ok(num / den)
    }
}

/// Sign helper `(-1)^e`.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub mod serde_rational {
    //! `#[serde(with = ...)]` adapter emitting the canonical `num/den` string.
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_text() {
        for (n, d) in [(0, 1), (3, 4), (-7, 9), (10, 4)] {
            let x = rat(n, d);
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
        assert_eq!(format_rational(&rat(10, 4)), "5/2");
        assert_eq!(format_rational(&int(3)), "3/1");
        assert_eq!(parse_rational("-6").unwrap(), int(-6));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_i(&rat(2, 3), 3).unwrap(), rat(8, 27));
        assert_eq!(pow_i(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(pow_i(&int(0), 0).unwrap(), int(1));
        assert!(pow_i(&int(0), -1).is_err());
    }
}
