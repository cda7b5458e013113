//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A series of order `N` knows the coefficients of `q^0 .. q^N` and nothing
//! beyond. Binary operations return the smaller of the two orders.

use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::rational::{format_rational, parse_rational, pow_i, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads or cuts `coeffs` so that the result has exactly the given order.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), order)
    }

    /// The monomial `c q^e` as a series; `e < 0` is rejected.
    pub fn monomial(m: &QMonomial, order: usize) -> Result<Self> {
        if m.qexp < 0 {
            return Err(Error::InvalidSpec(format!("negative q-power {m} in a power series")));
        }
        let mut s = Self::zero(order);
        if let Some(c) = s.coeffs.get_mut(m.qexp as usize) {
            *c = m.coeff.clone();
        }
        Ok(s)
    }

    /// `1 - c q^e`.
    pub fn binomial(m: &QMonomial, order: usize) -> Result<Self> {
        Ok(&Self::one(order) - &Self::monomial(m, order)?)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `q^k`, keeping the same order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![Rational::zero(); n];
        if k < n {
            coeffs[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplies by the monomial `c q^e` with `e >= 0`.
    pub fn mul_monomial(&self, m: &QMonomial) -> Result<Self> {
        if m.qexp < 0 {
            return Err(Error::InvalidSpec(format!("negative q-power {m} in a power series")));
        }
        Ok(self.shift(m.qexp as usize).scale(&m.coeff))
    }

    /// Adds `c * q^k * other` into `self` in place, dropping what falls past the order.
    pub fn add_shifted(&mut self, other: &TruncatedSeries, k: usize, c: &Rational) {
        let n = self.coeffs.len();
        for (i, x) in other.coeffs.iter().enumerate() {
            let j = i + k;
            if j >= n {
                break;
            }
            if !x.is_zero() {
                self.coeffs[j] += x * c;
            }
        }
    }

    /// Cauchy product truncated at `order` (which may be below both operand orders).
    pub fn mul_to(&self, other: &TruncatedSeries, order: usize) -> Self {
        let order = order.min(self.order()).min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, x) in self.coeffs[..=order].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs[..=order - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let n = self.coeffs.len();
        let mut r: Vec<Rational> = Vec::with_capacity(n);
        r.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &r[k - j];
                }
            }
            r.push(-(acc * &inv0));
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value of the truncated polynomial at `q = qv`.
    pub fn eval_polynomial(&self, qv: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * qv + c)
    }

    /// `sum c_i * qv^i`, same as [`Self::eval_polynomial`] but via explicit powers.
    pub fn eval_by_powers(&self, qv: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * pow_i(qv, i as i64)?;
        }
        Ok(acc)
    }

    /// First index where the two series differ, compared up to the common order.
    pub fn first_mismatch(&self, other: &TruncatedSeries) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<num_bigint::BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_to(rhs, usize::MAX)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom("coefficient count must be order + 1"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn partitions(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for part in 1..=n {
            for total in part..=n {
                p[total] += p[total - part];
            }
        }
        p
    }

    fn euler_product(order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(order);
        for j in 1..=order {
            acc = &acc * &TruncatedSeries::binomial(&QMonomial::q_pow(j as i64), order).unwrap();
        }
        acc
    }

    #[test]
    fn add_examples() {
        let a = TruncatedSeries::from_ints(&[1, 1], 1);
        let b = TruncatedSeries::from_ints(&[1, -1], 1);
        assert_eq!(&a + &b, TruncatedSeries::from_ints(&[2], 1));
        assert_eq!(&a + &TruncatedSeries::zero(1), a);
        let p = TruncatedSeries::from_ints(&partitions(10), 10);
        let e = euler_product(10);
        let sum = &p + &e;
        for i in 0..=10 {
            assert_eq!(sum.coeff(i), &(p.coeff(i) + e.coeff(i)));
        }
    }

    #[test]
    fn mul_examples() {
        let a = TruncatedSeries::from_ints(&[1, 1], 3);
        let b = TruncatedSeries::from_ints(&[1, -1], 3);
        assert_eq!(&a * &b, TruncatedSeries::from_ints(&[1, 0, -1], 3));
        assert_eq!(&a * &TruncatedSeries::one(3), a);
        let p = TruncatedSeries::from_ints(&partitions(10), 10);
        assert_eq!(&euler_product(10) * &p, TruncatedSeries::one(10));
    }

    #[test]
    fn order_is_minimum() {
        let a = TruncatedSeries::from_ints(&[1, 2, 3], 5);
        let b = TruncatedSeries::from_ints(&[1, 2], 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a - &b).order(), 2);
    }

    #[test]
    fn recip_examples() {
        let g = TruncatedSeries::from_ints(&[1, -1], 4).recip().unwrap();
        assert_eq!(g, TruncatedSeries::from_ints(&[1, 1, 1, 1, 1], 4));
        assert_eq!(TruncatedSeries::one(3).recip().unwrap(), TruncatedSeries::one(3));
        let p = euler_product(7).recip().unwrap();
        assert_eq!(p, TruncatedSeries::from_ints(&[1, 1, 2, 3, 5, 7, 11, 15], 7));
        assert_eq!(
            TruncatedSeries::from_ints(&[0, 1], 3).recip(),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn monomials_and_shifts() {
        let m = QMonomial::new(rat(2, 3), 2);
        let s = TruncatedSeries::monomial(&m, 3).unwrap();
        assert_eq!(s.coeff(2), &rat(2, 3));
        assert!(TruncatedSeries::monomial(&QMonomial::q_pow(-1), 3).is_err());
        assert_eq!(TruncatedSeries::monomial(&QMonomial::q_pow(9), 3).unwrap(), TruncatedSeries::zero(3));
        let one = TruncatedSeries::one(4);
        assert_eq!(one.shift(2).valuation(), Some(2));
        assert_eq!(one.shift(7), TruncatedSeries::zero(4));
    }

    #[test]
    fn monomial_power_examples() {
        assert_eq!(QMonomial::from_ratio(2, 3).pow(2), QMonomial::from_ratio(4, 9));
        assert_eq!(QMonomial::q().pow(0), QMonomial::one());
        assert_eq!(QMonomial::q().pow(-3), QMonomial::q_pow(-3));
    }

    #[test]
    fn evaluation_paths_agree() {
        let s = TruncatedSeries::from_coeffs(vec![int(1), rat(-1, 2), int(0), rat(3, 5)], 3);
        let qv = rat(2, 7);
        assert_eq!(s.eval_polynomial(&qv), s.eval_by_powers(&qv).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let s = TruncatedSeries::from_coeffs(vec![int(1), rat(-1, 2)], 2);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"order":2,"coeffs":["1/1","-1/2","0/1"]}"#);
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
