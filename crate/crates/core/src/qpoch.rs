//! q-shifted factorials `(x;q)_n` and `(x;q)_inf`.
//!
//! Two evaluation modes share the same `PochSpec`: an exact rational value at
//! a point `q = qv`, and a truncated power series in `q`. Negative lengths use
//! `(x;q)_{-k} = 1/(x q^{-k};q)_k`.

use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::rational::{pow_i, Rational};
use crate::series::TruncatedSeries;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLength {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochSpec {
    pub base: QMonomial,
    pub length: PochLength,
}

impl PochSpec {
    pub fn finite(base: QMonomial, n: usize) -> Self {
        PochSpec { base, length: PochLength::Finite(n) }
    }

    pub fn infinite(base: QMonomial) -> Self {
        PochSpec { base, length: PochLength::Infinite }
    }
}

/// `prod_{j<n} (1 - x qv^j)` for `n >= 0`, without any division.
fn forward_product(x: &Rational, qv: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc *= Rational::one() - &t;
        t *= qv;
    }
    acc
}

/// Exact value of a finite `(x;q)_n` at `q = qv`.
pub fn qpoch_value(spec: &PochSpec, qv: &Rational) -> Result<Rational> {
    match spec.length {
        PochLength::Infinite => Err(Error::InfiniteLengthInEngineA),
        PochLength::Finite(n) => Ok(forward_product(&spec.base.eval(qv)?, qv, n)),
    }
}

/// `(x;q)_n` at `q = qv` for any integer `n`.
pub fn poch(x: &QMonomial, n: i64, qv: &Rational) -> Result<Rational> {
    let mut t = Term::new(qv);
    t.poch(x, n)?;
    t.value("q-shifted factorial")
}

/// `(1 - a q^{2r}) / (1 - a)`, the collapsed `(q sqrt a, -q sqrt a)_r / (sqrt a, -sqrt a)_r`.
pub fn kernel_value(a: &QMonomial, r: i64, qv: &Rational) -> Result<Rational> {
    let mut t = Term::new(qv);
    t.kernel(a, r)?;
    t.value("kernel")
}

/// Accumulates a product of q-factorials, monomial powers and kernels at a
/// fixed point, keeping numerator and denominator apart so that a vanishing
/// denominator surfaces as [`Error::PoleHit`] instead of a panic.
#[derive(Debug, Clone)]
pub struct Term<'a> {
    qv: &'a Rational,
    num: Rational,
    den: Rational,
}

impl<'a> Term<'a> {
    pub fn new(qv: &'a Rational) -> Self {
        Term { qv, num: Rational::one(), den: Rational::one() }
    }

    pub fn qv(&self) -> &Rational {
        self.qv
    }

    /// Multiplies by `(x;q)_n`.
    pub fn poch(&mut self, x: &QMonomial, n: i64) -> Result<&mut Self> {
        if n >= 0 {
            self.num *= forward_product(&x.eval(self.qv)?, self.qv, n as usize);
        } else {
            self.den *= forward_product(&x.shift(n).eval(self.qv)?, self.qv, n.unsigned_abs() as usize);
        }
        Ok(self)
    }

    /// Divides by `(x;q)_n`.
    pub fn inv_poch(&mut self, x: &QMonomial, n: i64) -> Result<&mut Self> {
        if n >= 0 {
            self.den *= forward_product(&x.eval(self.qv)?, self.qv, n as usize);
        } else {
            self.num *= forward_product(&x.shift(n).eval(self.qv)?, self.qv, n.unsigned_abs() as usize);
        }
        Ok(self)
    }

    pub fn pochs(&mut self, xs: &[QMonomial], n: i64) -> Result<&mut Self> {
        for x in xs {
            self.poch(x, n)?;
        }
        Ok(self)
    }

    pub fn inv_pochs(&mut self, xs: &[QMonomial], n: i64) -> Result<&mut Self> {
        for x in xs {
            self.inv_poch(x, n)?;
        }
        Ok(self)
    }

    /// Multiplies by `(1 - a q^{2r}) / (1 - a)`.
    pub fn kernel(&mut self, a: &QMonomial, r: i64) -> Result<&mut Self> {
        let av = a.eval(self.qv)?;
        let d = Rational::one() - &av;
        if d.is_zero() {
            return Err(Error::KernelSingularity);
        }
        self.num *= Rational::one() - av * pow_i(self.qv, 2 * r)?;
        self.den *= d;
        Ok(self)
    }

    /// Multiplies by `m^e`.
    pub fn power(&mut self, m: &QMonomial, e: i64) -> Result<&mut Self> {
        let v = pow_i(&m.eval(self.qv)?, e.abs())?;
        if e >= 0 {
            self.num *= v;
        } else {
            self.den *= v;
        }
        Ok(self)
    }

    /// Multiplies by `q^e`.
    pub fn qpow(&mut self, e: i64) -> Result<&mut Self> {
        self.power(&QMonomial::q(), e)
    }

    pub fn scalar(&mut self, c: &Rational) -> &mut Self {
        self.num *= c;
        self
    }

    pub fn sign(&mut self, e: i64) -> &mut Self {
        if e.rem_euclid(2) == 1 {
            self.num = -self.num.clone();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero() && !self.den.is_zero()
    }

    pub fn value(&self, what: &str) -> Result<Rational> {
        if self.den.is_zero() {
            return Err(Error::PoleHit(what.to_string()));
        }
        Ok(&self.num / &self.den)
    }
}

/// Truncated expansion of `(x;q)_n` or `(x;q)_inf` as a power series in `q`.
pub fn qpoch_series(spec: &PochSpec, order: usize) -> Result<TruncatedSeries> {
    let base = &spec.base;
    match spec.length {
        PochLength::Finite(n) => {
            if base.qexp < 0 {
                return Err(Error::InvalidSpec(format!(
                    "finite product with base {base} leaves the power-series ring"
                )));
            }
            let mut acc = TruncatedSeries::one(order);
            for j in 0..n as i64 {
                let e = base.qexp + j;
                if e as usize > order {
                    break;
                }
                acc = multiply_binomial(&acc, &base.coeff, e as usize);
            }
            Ok(acc)
        }
        PochLength::Infinite => {
            if base.qexp <= 0 {
                return Err(Error::NonconvergentTruncation(base.qexp));
            }
            let mut acc = TruncatedSeries::one(order);
            let mut e = base.qexp as usize;
            while e <= order {
                acc = multiply_binomial(&acc, &base.coeff, e);
                e += 1;
            }
            Ok(acc)
        }
    }
}

/// `(q^r; q^m)_inf` truncated at `order`.
pub fn qpoch_residue_series(modulus: usize, residue: usize, order: usize) -> Result<TruncatedSeries> {
    if modulus == 0 || residue == 0 || residue > modulus {
        return Err(Error::InvalidSpec(format!(
            "residue product needs 1 <= r <= m, got r={residue}, m={modulus}"
        )));
    }
    let one = Rational::one();
    let mut acc = TruncatedSeries::one(order);
    let mut e = residue;
    while e <= order {
        acc = multiply_binomial(&acc, &one, e);
        e += modulus;
    }
    Ok(acc)
}

/// `s * (1 - c q^e)` in one pass.
pub(crate) fn multiply_binomial(s: &TruncatedSeries, c: &Rational, e: usize) -> TruncatedSeries {
    let mut coeffs = s.coeffs().to_vec();
    if e == 0 {
        let f = Rational::one() - c;
        return s.scale(&f);
    }
    for i in (e..coeffs.len()).rev() {
        let sub = &coeffs[i - e] * c;
        if !sub.is_zero() {
            coeffs[i] -= sub;
        }
    }
    TruncatedSeries::from_coeffs(coeffs, s.order())
}
