//! Theta series, Jacobi triple products and residue-class products.

use crate::bailey::AlphaWeight;
use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::qpoch::{multiply_binomial, qpoch_residue_series, qpoch_series, PochSpec};
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// `sum_{m in Z} (-1)^m q^{(A m^2 + B m)/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaSpec {
    pub a: i64,
    pub b: i64,
}

impl ThetaSpec {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a <= b.abs() {
            return Err(Error::InvalidSpec(format!("theta series needs A > |B|, got A={a}, B={b}")));
        }
        if (a - b).rem_euclid(2) != 0 {
            return Err(Error::InvalidSpec(format!("theta series needs A and B of equal parity, got A={a}, B={b}")));
        }
        Ok(ThetaSpec { a, b })
    }

    pub fn exponent(&self, m: i64) -> i64 {
        (self.a * m * m + self.b * m) / 2
    }

    /// The `z` with `sum = (q^A;q^A)(z;q^A)(q^A/z;q^A)`.
    pub fn jtp_argument(&self) -> QMonomial {
        QMonomial::q_pow((self.a + self.b) / 2)
    }
}

pub fn theta_series(spec: &ThetaSpec, order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let one = Rational::one();
    let mut m = 0i64;
    loop {
        let mut hit = false;
        for mm in if m == 0 { vec![0] } else { vec![m, -m] } {
            let e = spec.exponent(mm);
            if e <= order as i64 {
                hit = true;
                let c = if mm.rem_euclid(2) == 1 { -one.clone() } else { one.clone() };
                out.add_shifted(&TruncatedSeries::one(0), e as usize, &c);
            }
        }
        if !hit && m > 0 {
            return out;
        }
        m += 1;
    }
}

/// `prod_{j >= 0} (1 - c q^{e + j step})` truncated at `order`; requires `e >= 0`.
fn stepped_product(base: &QMonomial, step: usize, order: usize) -> Result<TruncatedSeries> {
    if base.qexp < 0 {
        return Err(Error::NonconvergentTruncation(base.qexp));
    }
    let mut acc = TruncatedSeries::one(order);
    let mut e = base.qexp as usize;
    if e == 0 {
        acc = multiply_binomial(&acc, &base.coeff, 0);
        e = step;
    }
    while e <= order {
        acc = multiply_binomial(&acc, &base.coeff, e);
        e += step;
    }
    Ok(acc)
}

/// `(q;q)_inf (z;q)_inf (q/z;q)_inf`.
pub fn jtp_product(z: &QMonomial, order: usize) -> Result<TruncatedSeries> {
    jtp_product_base(z, 1, order)
}

/// `(p;p)_inf (z;p)_inf (p/z;p)_inf` with `p = q^step`.
pub fn jtp_product_base(z: &QMonomial, step: usize, order: usize) -> Result<TruncatedSeries> {
    if step == 0 {
        return Err(Error::InvalidSpec("triple product base must be a positive power of q".into()));
    }
    let p = QMonomial::q_pow(step as i64);
    let pp = stepped_product(&p, step, order)?;
    let zz = stepped_product(z, step, order)?;
    let rest = stepped_product(&(&p / z), step, order)?;
    Ok(&(&pp * &zz) * &rest)
}

/// `1 + sum_{m >= 1} (1 + q^m) (-1)^m q^{(A m^2 + B m)/2}`, the folded form of a
/// theta series with `B = -1`.
pub fn folded_theta_series(spec: &ThetaSpec, order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let one = TruncatedSeries::one(0);
    let mut m = 0i64;
    loop {
        let e = spec.exponent(m);
        if e > order as i64 && m > 0 {
            return out;
        }
        if e >= 0 && e <= order as i64 {
            let sign = if m % 2 == 1 { -Rational::one() } else { Rational::one() };
            out.add_shifted(&one, e as usize, &sign);
            if m > 0 {
                out.add_shifted(&one, (e + m) as usize, &sign);
            }
        }
        m += 1;
    }
}

/// Product notation over residue classes: `Theta(S, m) / (q;q)_inf`, then divided by
/// `(q^start; q)_inf^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpdtSpec {
    pub modulus: usize,
    pub residues: BTreeSet<usize>,
    pub poch_power: u32,
    pub prefactor_start: usize,
}

impl SpdtSpec {
    /// Closes `residues` under `r -> m - r`; requires `m >= 2` and `0` in the set.
    pub fn new(modulus: usize, residues: &[usize], poch_power: u32, prefactor_start: usize) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSpec(format!("modulus must be at least 2, got {modulus}")));
        }
        if !residues.contains(&0) {
            return Err(Error::InvalidSpec("residue set must contain 0".into()));
        }
        if prefactor_start == 0 {
            return Err(Error::InvalidSpec("prefactor product must start at q^1 or higher".into()));
        }
        let mut set = BTreeSet::new();
        for &r in residues {
            let r = r % modulus;
            set.insert(r);
            set.insert((modulus - r) % modulus);
        }
        Ok(SpdtSpec { modulus, residues: set, poch_power, prefactor_start })
    }

    /// `prod (1 - q^n)` over `n >= 1` with `n mod m` in the residue set.
    pub fn theta_product(&self, order: usize) -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::one(order);
        for &r in &self.residues {
            let r = if r == 0 { self.modulus } else { r };
            acc = &acc * &qpoch_residue_series(self.modulus, r, order)?;
        }
        Ok(acc)
    }
}

pub fn spdt_series(spec: &SpdtSpec, order: usize) -> Result<TruncatedSeries> {
    let euler = qpoch_series(&PochSpec::infinite(QMonomial::q()), order)?;
    Ok(&spec.theta_product(order)? * &euler.recip()?)
}

pub fn rr_rhs_series(spec: &SpdtSpec, order: usize) -> Result<TruncatedSeries> {
    let pre = qpoch_series(&PochSpec::infinite(QMonomial::q_pow(spec.prefactor_start as i64)), order)?;
    Ok(&spdt_series(spec, order)? * &pre.pow(spec.poch_power).recip()?)
}

/// `1/(aq;q)_inf^power * sum_{m >= 0} alpha_m` for an alpha of weight shape `w`.
pub fn alpha_sum_rhs(w: &AlphaWeight, a: &QMonomial, poch_power: u32, order: usize) -> Result<TruncatedSeries> {
    if a.qexp < 0 {
        return Err(Error::InvalidSpec(format!("a = {a} outside the power-series ring")));
    }
    let mut sum = TruncatedSeries::zero(order);
    let mut m = 0usize;
    loop {
        let e = w.q_exponent(m as i64) + a.qexp * w.a_power * m as i64;
        if e < 0 {
            return Err(Error::BoundDerivationFailure(format!("alpha term {m} has negative q-power")));
        }
        if e > order as i64 {
            if m > 0 {
                break;
            }
        } else {
            sum = &sum + &w.series(a, m, order)?;
        }
        m += 1;
    }
    let aq = qpoch_series(&PochSpec::infinite(a.shift(1)), order)?;
    Ok(&sum * &aq.pow(poch_power).recip()?)
}

/// Whether every coefficient is a nonnegative integer.
pub fn has_nonnegative_integer_coeffs(s: &TruncatedSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_integer() && *c >= Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_examples() {
        let t = theta_series(&ThetaSpec::new(7, -1).unwrap(), 7);
        assert_eq!(t, TruncatedSeries::from_ints(&[1, 0, 0, -1, -1, 0, 0, 0], 7));
        let t = theta_series(&ThetaSpec::new(9, -1).unwrap(), 10);
        assert_eq!(t, TruncatedSeries::from_ints(&[1, 0, 0, 0, -1, -1, 0, 0, 0, 0, 0], 10));
        assert_eq!(theta_series(&ThetaSpec::new(5, 1).unwrap(), 0), TruncatedSeries::one(0));
    }

    #[test]
    fn theta_rejects_bad_shapes() {
        assert!(ThetaSpec::new(3, 3).is_err());
        assert!(ThetaSpec::new(4, 1).is_err());
    }

    #[test]
    fn jtp_examples() {
        assert!(jtp_product(&QMonomial::q(), 10).unwrap().is_zero());
        let p = jtp_product_base(&QMonomial::q_pow(3), 7, 6).unwrap();
        assert_eq!(p, TruncatedSeries::from_ints(&[1, 0, 0, -1, -1, 0, 0], 6));
        let two = jtp_product_base(&QMonomial::q(), 2, 30).unwrap();
        assert_eq!(two, theta_series(&ThetaSpec::new(2, 0).unwrap(), 30));
        assert!(jtp_product_base(&QMonomial::q_pow(9), 7, 6).is_err());
    }

    #[test]
    fn spdt_examples() {
        let s = SpdtSpec::new(7, &[0, 3], 0, 1).unwrap();
        assert_eq!(s.residues.iter().copied().collect::<Vec<_>>(), vec![0, 3, 4]);
        assert_eq!(spdt_series(&s, 4).unwrap(), TruncatedSeries::from_ints(&[1, 1, 2, 2, 3], 4));
        assert!(SpdtSpec::new(1, &[0], 1, 1).is_err());
        assert!(SpdtSpec::new(7, &[3], 1, 1).is_err());
        let s = SpdtSpec::new(9, &[0, 4], 2, 1).unwrap();
        assert_eq!(spdt_series(&s, 3).unwrap().coeff(0), &Rational::one());
    }

    #[test]
    fn rr_rhs_examples() {
        let s = SpdtSpec::new(7, &[0, 3], 1, 1).unwrap();
        assert_eq!(rr_rhs_series(&s, 4).unwrap(), TruncatedSeries::from_ints(&[1, 2, 5, 9, 17], 4));
        let s = SpdtSpec::new(5, &[0, 2], 1, 1).unwrap();
        assert_eq!(rr_rhs_series(&s, 2).unwrap(), TruncatedSeries::from_ints(&[1, 2, 4], 2));
    }

    #[test]
    fn folded_theta_matches_bilateral() {
        for a in [5, 7, 9, 11] {
            let spec = ThetaSpec::new(a, -1).unwrap();
            assert_eq!(folded_theta_series(&spec, 60), theta_series(&spec, 60));
        }
    }

    #[test]
    fn alpha_sum_at_one_matches_product() {
        let w = AlphaWeight { sign: true, a_power: 3, quad: 7, lin: -1 };
        let lhs = alpha_sum_rhs(&w, &QMonomial::one(), 2, 20).unwrap();
        let rhs = rr_rhs_series(&SpdtSpec::new(7, &[0, 3], 1, 1).unwrap(), 20).unwrap();
        assert_eq!(lhs, rhs);
    }
}
