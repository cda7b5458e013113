use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::qpoch::{qpoch_series, PochSpec};
use crate::rational::{pow_i, Rational};
use crate::series::TruncatedSeries;
use num_integer::Roots;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// `constant + sum coeffs[i] * n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn zero(dims: usize) -> Self {
        LinearForm { coeffs: vec![0; dims], constant: 0 }
    }

    /// `n_i`.
    pub fn index(dims: usize, i: usize) -> Self {
        Self::sum(dims, &[i])
    }

    /// `sum_{i in idx} n_i`.
    pub fn sum(dims: usize, idx: &[usize]) -> Self {
        let mut f = Self::zero(dims);
        for &i in idx {
            f.coeffs[i] += 1;
        }
        f
    }

    /// `n_hi - n_lo`.
    pub fn diff(dims: usize, hi: usize, lo: usize) -> Self {
        let mut f = Self::index(dims, hi);
        f.coeffs[lo] -= 1;
        f
    }

    pub fn eval(&self, n: &[usize]) -> i64 {
        self.constant + self.coeffs.iter().zip(n).map(|(c, &x)| c * x as i64).sum::<i64>()
    }
}

/// `(base; q)_length` raised to `power` (`+1` or `-1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PochFactor {
    pub base: QMonomial,
    pub length: LinearForm,
    pub power: i32,
}

/// A multiple sum `sum_n c(n) q^{Q(n) + L.n} prod (x_j; q)_{lambda_j(n)}^{+-1}` over
/// `n in N^d` restricted by chain constraints `n_hi >= n_lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSumSpec {
    pub dims: usize,
    pub nested: Vec<(usize, usize)>,
    /// Upper triangular: the exponent gets `quad[i][j] n_i n_j` for `i <= j`.
    pub quad: Vec<Vec<i64>>,
    pub lin: Vec<i64>,
    pub coeff_powers: Vec<(Rational, LinearForm)>,
    pub factors: Vec<PochFactor>,
}

impl MultiSumSpec {
    pub fn new(dims: usize) -> Self {
        MultiSumSpec {
            dims,
            nested: Vec::new(),
            quad: vec![vec![0; dims]; dims],
            lin: vec![0; dims],
            coeff_powers: Vec::new(),
            factors: Vec::new(),
        }
    }

    pub fn square(mut self, i: usize) -> Self {
        self.quad[i][i] += 1;
        self
    }

    pub fn cross(mut self, i: usize, j: usize) -> Self {
        let (i, j) = (i.min(j), i.max(j));
        self.quad[i][j] += 1;
        self
    }

    pub fn linear(mut self, i: usize, k: i64) -> Self {
        self.lin[i] += k;
        self
    }

    /// Requires `n_hi >= n_lo`.
    pub fn nest(mut self, hi: usize, lo: usize) -> Self {
        self.nested.push((hi, lo));
        self
    }

    pub fn poch(mut self, base: QMonomial, length: LinearForm) -> Self {
        self.factors.push(PochFactor { base, length, power: 1 });
        self
    }

    pub fn inv_poch(mut self, base: QMonomial, length: LinearForm) -> Self {
        self.factors.push(PochFactor { base, length, power: -1 });
        self
    }

    /// Multiplies the summand by `m^{form}`; the q-part goes into the linear exponent.
    pub fn monomial_power(mut self, m: &QMonomial, form: LinearForm) -> Result<Self> {
        if form.constant != 0 {
            return Err(Error::InvalidSpec("monomial power forms must be homogeneous".into()));
        }
        for (l, c) in self.lin.iter_mut().zip(&form.coeffs) {
            *l += m.qexp * c;
        }
        if !m.coeff.is_one() {
            self.coeff_powers.push((m.coeff.clone(), form));
        }
        Ok(self)
    }

    /// Per-index bound `floor(sqrt(order))`, valid once every square coefficient is
    /// at least one and nothing else can lower the exponent.
    pub fn index_bound(&self, order: usize) -> Result<usize> {
        for i in 0..self.dims {
            if self.quad[i][i] < 1 {
                return Err(Error::BoundDerivationFailure(format!("index {i} has no square term")));
            }
            if self.lin[i] < 0 {
                return Err(Error::BoundDerivationFailure(format!("index {i} has a negative linear term")));
            }
            for j in i + 1..self.dims {
                if self.quad[i][j] < 0 {
                    return Err(Error::BoundDerivationFailure(format!("cross term {i},{j} is negative")));
                }
            }
        }
        for f in &self.factors {
            if f.base.qexp < 0 || (f.base.qexp == 0 && f.power < 0 && f.base.coeff.is_one()) {
                return Err(Error::BoundDerivationFailure(format!("factor ({};q) is not a unit power series", f.base)));
            }
        }
        Ok(order.sqrt())
    }

    pub fn exponent(&self, n: &[usize]) -> i64 {
        let mut e = 0;
        for i in 0..self.dims {
            let ni = n[i] as i64;
            e += self.lin[i] * ni;
            for (q, &nj) in self.quad[i].iter().zip(n).skip(i) {
                e += q * ni * nj as i64;
            }
        }
        e
    }

    fn admissible(&self, n: &[usize]) -> bool {
        self.nested.iter().all(|&(hi, lo)| n[hi] >= n[lo])
    }
}

type CacheKey = (QMonomial, i32, i64);

/// Series of `(base; q)_len^{power}` at full order, computed once.
struct FactorCache {
    order: usize,
    map: HashMap<CacheKey, TruncatedSeries>,
}

impl FactorCache {
    fn get(&mut self, f: &PochFactor, len: i64) -> Result<&TruncatedSeries> {
        if len < 0 {
            return Err(Error::InvalidSpec(format!("negative length {len} for ({};q)", f.base)));
        }
        let key = (f.base.clone(), f.power, len);
        if !self.map.contains_key(&key) {
            let s = qpoch_series(&PochSpec::finite(f.base.clone(), len as usize), self.order)?;
            let s = if f.power < 0 { s.recip()? } else { s };
            self.map.insert(key.clone(), s);
        }
        Ok(&self.map[&key])
    }
}

/// Exact truncated expansion of the multiple sum.
pub fn multisum_series(spec: &MultiSumSpec, order: usize) -> Result<TruncatedSeries> {
    let bound = spec.index_bound(order)?;
    let mut cache = FactorCache { order, map: HashMap::new() };
    let mut out = TruncatedSeries::zero(order);
    let caps = vec![bound; spec.dims];
    let mut tuples = Vec::new();
    super::transform::for_each_tuple(&caps, 0, |n| {
        if spec.admissible(n) && spec.exponent(n) <= order as i64 {
            tuples.push(n.to_vec());
        }
    });
    for n in tuples {
        let e = spec.exponent(&n) as usize;
        let window = order - e;
        let mut coeff = Rational::one();
        for (c, form) in &spec.coeff_powers {
            coeff *= pow_i(c, form.eval(&n))?;
        }
        let mut term = TruncatedSeries::one(window);
        for f in &spec.factors {
            let len = f.length.eval(&n);
            term = term.mul_to(cache.get(f, len)?, window);
        }
        if !coeff.is_zero() {
            out.add_shifted(&term, e, &coeff);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QMonomial {
        QMonomial::q()
    }

    #[test]
    fn rogers_ramanujan_single_sum() {
        let spec = MultiSumSpec::new(1).square(0).inv_poch(q(), LinearForm::index(1, 0));
        let s = multisum_series(&spec, 12).unwrap();
        let expected = [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9];
        assert_eq!(s, TruncatedSeries::from_ints(&expected, 12));
    }

    #[test]
    fn missing_square_is_rejected() {
        let spec = MultiSumSpec::new(2).square(0).linear(1, 1);
        assert!(matches!(multisum_series(&spec, 5), Err(Error::BoundDerivationFailure(_))));
        let spec = MultiSumSpec::new(1).square(0).linear(0, -1);
        assert!(matches!(multisum_series(&spec, 5), Err(Error::BoundDerivationFailure(_))));
    }

    #[test]
    fn order_zero_is_one() {
        let spec = MultiSumSpec::new(2).square(0).square(1).inv_poch(q(), LinearForm::sum(2, &[0, 1]));
        assert_eq!(multisum_series(&spec, 0).unwrap(), TruncatedSeries::one(0));
    }

    #[test]
    fn coefficient_powers() {
        let a = QMonomial::new(crate::rational::rat(2, 3), 1);
        let spec = MultiSumSpec::new(1)
            .square(0)
            .monomial_power(&a, LinearForm::index(1, 0))
            .unwrap();
        let s = multisum_series(&spec, 6).unwrap();
        assert_eq!(s.coeff(2), &crate::rational::rat(2, 3));
        assert_eq!(s.coeff(6), &crate::rational::rat(4, 9));
        assert!(s.coeff(5).is_zero());
    }
}
