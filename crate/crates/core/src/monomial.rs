//! Monomials `c * q^e` with exact rational coefficient.
//!
//! Parameters of every q-series in the crate are monomials, so products,
//! quotients and integer powers never leave this type. Negative exponents
//! are allowed here and only here.

use crate::error::Result;
use crate::rational::{format_rational, pow_i, rat, serde_rational, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Div, Mul, Neg};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMonomial")]
pub struct QMonomial {
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
    pub qexp: i64,
}

#[derive(Deserialize)]
struct RawMonomial {
    #[serde(with = "serde_rational")]
    coeff: Rational,
    qexp: i64,
}

impl TryFrom<RawMonomial> for QMonomial {
    type Error = String;
    fn try_from(raw: RawMonomial) -> std::result::Result<Self, String> {
        if raw.coeff.is_zero() {
            Err("monomial coefficient must be nonzero".into())
        } else {
            Ok(QMonomial::new(raw.coeff, raw.qexp))
        }
    }
}

impl QMonomial {
    /// Panics if `coeff` is zero; zero is not a monomial.
    pub fn new(coeff: Rational, qexp: i64) -> Self {
        assert!(!coeff.is_zero(), "monomial coefficient must be nonzero");
        QMonomial { coeff, qexp }
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), 0)
    }

    pub fn q() -> Self {
        Self::new(Rational::one(), 1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::new(Rational::one(), e)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(rat(num, den))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.coeff.clone(), self.qexp + k)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.coeff * c, self.qexp)
    }

    pub fn pow(&self, k: i64) -> Self {
        let c = pow_i(&self.coeff, k).expect("nonzero coefficient");
        Self::new(c, self.qexp * k)
    }

    pub fn recip(&self) -> Self {
        Self::new(self.coeff.recip(), -self.qexp)
    }

    /// Value at the rational point `q = qv`.
    pub fn eval(&self, qv: &Rational) -> Result<Rational> {
        Ok(&self.coeff * pow_i(qv, self.qexp)?)
    }

}

impl Mul for &QMonomial {
    type Output = QMonomial;
    fn mul(self, rhs: &QMonomial) -> QMonomial {
        QMonomial::new(&self.coeff * &rhs.coeff, self.qexp + rhs.qexp)
    }
}

impl Mul for QMonomial {
    type Output = QMonomial;
    fn mul(self, rhs: QMonomial) -> QMonomial {
        &self * &rhs
    }
}

impl Div for &QMonomial {
    type Output = QMonomial;
    fn div(self, rhs: &QMonomial) -> QMonomial {
        QMonomial::new(&self.coeff / &rhs.coeff, self.qexp - rhs.qexp)
    }
}

impl Div for QMonomial {
    type Output = QMonomial;
    fn div(self, rhs: QMonomial) -> QMonomial {
        &self / &rhs
    }
}

impl Neg for QMonomial {
    type Output = QMonomial;
    fn neg(self) -> QMonomial {
        QMonomial::new(-self.coeff, self.qexp)
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.qexp {
            0 => write!(f, "{}", format_rational(&self.coeff)),
            1 => write!(f, "{}*q", format_rational(&self.coeff)),
            e => write!(f, "{}*q^{}", format_rational(&self.coeff), e),
        }
    }
}
