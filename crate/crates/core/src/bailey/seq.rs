use crate::error::Result;
use crate::monomial::QMonomial;
use crate::qpoch::{multiply_binomial, qpoch_series, PochSpec, Term};
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use crate::Error;

/// A sequence of hypergeometric product form
///
/// `f_r = prod (x_i;q)_r / prod (y_j;q)_r * prod (1 - k q^{2r})/(1 - k) * z^r * q^{quad * r(r-1)/2}`,
///
/// which covers every alpha, delta, u, v, t and w choice the transforms use.
/// Negative `r` is allowed (the `t_{n-l}` weights need it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqSpec {
    pub label: String,
    pub num: Vec<QMonomial>,
    pub den: Vec<QMonomial>,
    pub kernels: Vec<QMonomial>,
    pub ratio: QMonomial,
    pub quad: i64,
}

impl SeqSpec {
    pub fn new(label: impl Into<String>) -> Self {
        SeqSpec {
            label: label.into(),
            num: Vec::new(),
            den: Vec::new(),
            kernels: Vec::new(),
            ratio: QMonomial::one(),
            quad: 0,
        }
    }

    /// The constant sequence `1`.
    pub fn unit() -> Self {
        Self::new("1")
    }

    /// `[r = 0]`, realised as `(1;q)_r`.
    pub fn delta_at_zero() -> Self {
        Self::new("[r=0]").num([QMonomial::one()])
    }

    pub fn num(mut self, xs: impl IntoIterator<Item = QMonomial>) -> Self {
        self.num.extend(xs);
        self
    }

    pub fn den(mut self, xs: impl IntoIterator<Item = QMonomial>) -> Self {
        self.den.extend(xs);
        self
    }

    pub fn kernel(mut self, a: QMonomial) -> Self {
        self.kernels.push(a);
        self
    }

    pub fn ratio(mut self, z: QMonomial) -> Self {
        self.ratio = &self.ratio * &z;
        self
    }

    pub fn quad(mut self, k: i64) -> Self {
        self.quad += k;
        self
    }

    pub fn eval(&self, r: i64, qv: &Rational) -> Result<Rational> {
        let mut t = Term::new(qv);
        self.accumulate(&mut t, r)?;
        t.value(&self.label)
    }

    pub(crate) fn accumulate(&self, t: &mut Term<'_>, r: i64) -> Result<()> {
        t.pochs(&self.num, r)?.inv_pochs(&self.den, r)?;
        for k in &self.kernels {
            t.kernel(k, r)?;
        }
        t.power(&self.ratio, r)?.qpow(self.quad * r * (r - 1) / 2)?;
        Ok(())
    }

    /// Power series value at index `r >= 0`; all parameters must have
    /// nonnegative q-exponent and the result must be a power series.
    pub fn eval_series(&self, r: usize, order: usize) -> Result<TruncatedSeries> {
        let ri = r as i64;
        let mut acc = TruncatedSeries::one(order);
        for x in &self.num {
            acc = &acc * &qpoch_series(&PochSpec::finite(x.clone(), r), order)?;
        }
        for y in &self.den {
            acc = &acc * &qpoch_series(&PochSpec::finite(y.clone(), r), order)?.recip()?;
        }
        for k in &self.kernels {
            if k.qexp < 0 {
                return Err(Error::InvalidSpec(format!("kernel parameter {k} outside the power-series ring")));
            }
            let top = multiply_binomial(&TruncatedSeries::one(order), &k.coeff, (k.qexp + 2 * ri) as usize);
            let bottom = multiply_binomial(&TruncatedSeries::one(order), &k.coeff, k.qexp as usize);
            acc = &acc * &(&top * &bottom.recip().map_err(|_| Error::KernelSingularity)?);
        }
        let z = self.ratio.pow(ri).shift(self.quad * ri * (ri - 1) / 2);
        if z.qexp < 0 {
            return Err(Error::InvalidSpec(format!("{} has a negative q-power at r={r}", self.label)));
        }
        acc.mul_monomial(&z)
    }

    pub fn is_unit(&self) -> bool {
        self.num.is_empty() && self.den.is_empty() && self.kernels.is_empty() && self.ratio == QMonomial::one() && self.quad == 0
    }
}

impl Default for SeqSpec {
    fn default() -> Self {
        Self::unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn unit_and_indicator() {
        let qv = rat(2, 7);
        for r in 0..4 {
            assert_eq!(SeqSpec::unit().eval(r, &qv).unwrap(), int(1));
            let d = SeqSpec::delta_at_zero().eval(r, &qv).unwrap();
            assert_eq!(d, if r == 0 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn product_form() {
        let qv = rat(1, 3);
        let a = QMonomial::from_ratio(2, 5);
        let s = SeqSpec::new("s").num([a.clone()]).den([QMonomial::q()]).ratio(QMonomial::from_ratio(-1, 1)).quad(3);
        let r = 2;
        let expected = (int(1) - rat(2, 5)) * (int(1) - rat(2, 15)) / ((int(1) - rat(1, 3)) * (int(1) - rat(1, 9))) * rat(1, 27);
        assert_eq!(s.eval(r, &qv).unwrap(), expected);
    }

    #[test]
    fn negative_index_uses_reflection() {
        let qv = rat(3, 4);
        let s = SeqSpec::new("t").num([QMonomial::from_ratio(2, 3)]).den([QMonomial::from_ratio(5, 7)]);
        let v = s.eval(-2, &qv).unwrap();
        let x = QMonomial::from_ratio(2, 3).shift(-2);
        let y = QMonomial::from_ratio(5, 7).shift(-2);
        let expected = crate::qpoch::poch(&y, 2, &qv).unwrap() / crate::qpoch::poch(&x, 2, &qv).unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn series_agrees_with_point_values_on_polynomials() {
        let s = SeqSpec::new("p").num([QMonomial::new(rat(2, 3), 1), QMonomial::q_pow(2)]).ratio(QMonomial::new(rat(1, 2), 1));
        let series = s.eval_series(3, 40).unwrap();
        let qv = rat(-2, 3);
        assert_eq!(series.eval_polynomial(&qv), s.eval(3, &qv).unwrap());
    }
}
