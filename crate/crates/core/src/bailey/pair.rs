use super::transform::for_each_tuple;
use super::Arity;
use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::qpoch::{multiply_binomial, qpoch_series, PochSpec, Term};
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use num_traits::{One, Zero};

/// The seed pairs the chains start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `alpha_m = [m = 0]`.
    Unit,
    /// `alpha_m = W_m(a) (-1)^m a^m q^{(3m^2-m)/2}`, `beta = 1/((aq)_{n+l}(q)_n(q)_l)`.
    P47,
    /// `alpha_m = W_m(a) (-1)^m q^{(m^2-m)/2}`, `beta = q^{nl}/((aq)_{n+l}(q)_n(q)_l)`.
    P48,
    /// Same alpha as [`PairKind::P47`] with the three index beta
    /// `(aq)_{n+l+k}/((aq)_{n+l}(aq)_{n+k}(aq)_{l+k}(q)_n(q)_l(q)_k)`.
    P57,
}

impl PairKind {
    pub fn id(self) -> &'static str {
        match self {
            PairKind::Unit => "UNIT",
            PairKind::P47 => "PAIR-4.7",
            PairKind::P48 => "PAIR-4.8",
            PairKind::P57 => "PAIR-5.7",
        }
    }

    /// The exponent shape of the seed alpha; `None` for the unit pair.
    pub fn alpha_weight(self) -> Option<AlphaWeight> {
        match self {
            PairKind::Unit => None,
            PairKind::P47 | PairKind::P57 => Some(AlphaWeight { sign: true, a_power: 1, quad: 3, lin: -1 }),
            PairKind::P48 => Some(AlphaWeight { sign: true, a_power: 0, quad: 1, lin: -1 }),
        }
    }
}

/// `(a)_m (1 - a q^{2m}) / ((q)_m (1 - a))`, written as
/// `(aq)_{m-1} (1 - a q^{2m}) / (q)_m` so that `a = 1` needs no special case.
pub fn w_weight_value(a: &QMonomial, m: usize, qv: &Rational) -> Result<Rational> {
    if m == 0 {
        return Ok(Rational::one());
    }
    let mut t = Term::new(qv);
    t.poch(&a.shift(1), m as i64 - 1)?;
    t.scalar(&(Rational::one() - a.shift(2 * m as i64).eval(qv)?));
    t.inv_poch(&QMonomial::q(), m as i64)?;
    t.value("W weight")
}

/// Power series of the W weight; for `a = 1` this is `1 + q^m` (`m >= 1`).
pub fn w_weight_series(a: &QMonomial, m: usize, order: usize) -> Result<TruncatedSeries> {
    if m == 0 {
        return Ok(TruncatedSeries::one(order));
    }
    if *a == QMonomial::one() {
        return Ok(multiply_binomial(&TruncatedSeries::one(order), &-Rational::one(), m));
    }
    if a.qexp < 0 {
        return Err(Error::InvalidSpec(format!("a = {a} outside the power-series ring")));
    }
    let head = qpoch_series(&PochSpec::finite(a.shift(1), m - 1), order)?;
    let head = multiply_binomial(&head, &a.coeff, a.qexp as usize + 2 * m);
    let q_m = qpoch_series(&PochSpec::finite(QMonomial::q(), m), order)?;
    Ok(&head * &q_m.recip()?)
}

/// Alpha of the shape `W_m(a) s^m a^{a_power m} q^{(quad m^2 + lin m)/2}`, `s = -1` when `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlphaWeight {
    pub sign: bool,
    pub a_power: i64,
    pub quad: i64,
    pub lin: i64,
}

impl AlphaWeight {
    /// The weight after one lemma step with every step parameter sent to infinity:
    /// `a^{2m} q^{2m^2}` for two indices, `a^{3m} q^{3m^2}` for three.
    pub fn limit_step(self, arity: Arity) -> Self {
        let d = arity.indices() as i64;
        AlphaWeight { a_power: self.a_power + d, quad: self.quad + 2 * d, ..self }
    }

    pub fn iterate(self, arity: Arity, k: usize) -> Self {
        (0..k).fold(self, |w, _| w.limit_step(arity))
    }

    /// Exponent of `q` contributed by `q^{(quad m^2 + lin m)/2}`; always an integer
    /// because `quad` and `lin` have the same parity.
    pub fn q_exponent(&self, m: i64) -> i64 {
        (self.quad * m * m + self.lin * m) / 2
    }

    pub fn value(&self, a: &QMonomial, m: usize, qv: &Rational) -> Result<Rational> {
        let mi = m as i64;
        let mut t = Term::new(qv);
        t.scalar(&w_weight_value(a, m, qv)?);
        if self.sign {
            t.sign(mi);
        }
        t.power(a, self.a_power * mi)?.qpow(self.q_exponent(mi))?;
        t.value("alpha")
    }

    pub fn series(&self, a: &QMonomial, m: usize, order: usize) -> Result<TruncatedSeries> {
        let mi = m as i64;
        let mut mono = a.pow(self.a_power * mi).shift(self.q_exponent(mi));
        if self.sign && m % 2 == 1 {
            mono = -mono;
        }
        if mono.qexp < 0 {
            return Err(Error::InvalidSpec(format!("alpha term at m={m} has a negative q-power")));
        }
        if mono.qexp as usize > order {
            return Ok(TruncatedSeries::zero(order));
        }
        let e = mono.qexp as usize;
        let w = w_weight_series(a, m, order - e)?;
        let mut out = TruncatedSeries::zero(order);
        out.add_shifted(&w, e, &mono.coeff);
        Ok(out)
    }
}

/// Which reading of the lemma's beta transformation to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaForm {
    /// The second index uses its own parameters throughout.
    Corrected,
    /// The second index factor as typeset: `(qa/(b'c))_{N-l}` and `(qa/b, qa/c)_N`.
    Printed,
}

/// Parameters of one lemma application: `[b, c, b', c']` or `[b, c, b', c', b'', c'']`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaStep {
    pub params: Vec<QMonomial>,
    pub form: LemmaForm,
}

impl LemmaStep {
    pub fn new(params: Vec<QMonomial>) -> Self {
        LemmaStep { params, form: LemmaForm::Corrected }
    }

    pub fn printed(params: Vec<QMonomial>) -> Self {
        LemmaStep { params, form: LemmaForm::Printed }
    }

    /// The factor `prod (b_i)_m (a^d q^d / prod b_i)^m / prod (aq/b_i)_m` carried by alpha.
    fn alpha_factor(&self, t: &mut Term<'_>, a: &QMonomial, m: i64) -> Result<()> {
        let d = (self.params.len() / 2) as i64;
        let aq = a.shift(1);
        let mut z = aq.pow(d);
        for b in &self.params {
            t.poch(b, m)?.inv_poch(&(&aq / b), m)?;
            z = &z / b;
        }
        t.power(&z, m)?;
        Ok(())
    }

    /// The matrix `F[M][n]` acting on index `i` of beta.
    fn beta_matrix(&self, a: &QMonomial, i: usize, cap: usize, qv: &Rational) -> Result<Vec<Vec<Rational>>> {
        let aq = a.shift(1);
        let b = &self.params[2 * i];
        let c = &self.params[2 * i + 1];
        let ratio = &aq / &(b * c);
        let (tail_base, den_pair) = if self.form == LemmaForm::Printed && i == 1 {
            (&aq / &(b * &self.params[1]), [&aq / &self.params[0], &aq / &self.params[1]])
        } else {
            (ratio.clone(), [&aq / b, &aq / c])
        };
        let mut out = vec![vec![Rational::zero(); cap + 1]; cap + 1];
        for (big, row) in out.iter_mut().enumerate() {
            for (n, cell) in row.iter_mut().enumerate().take(big + 1) {
                let (bi, ni) = (big as i64, n as i64);
                let mut t = Term::new(qv);
                t.pochs(&[b.clone(), c.clone()], ni)?
                    .poch(&tail_base, bi - ni)?
                    .power(&ratio, ni)?
                    .inv_pochs(&den_pair, bi)?
                    .inv_poch(&QMonomial::q(), bi - ni)?;
                *cell = t.value("lemma beta factor")?;
            }
        }
        Ok(out)
    }
}

/// A Bailey type pair: a seed and the lemma steps applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaileyPair {
    pub id: String,
    pub arity: Arity,
    pub seed: PairKind,
    pub steps: Vec<LemmaStep>,
}

/// Beta values on the box `[0, cap]^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTable {
    pub arity: Arity,
    pub cap: usize,
    values: Vec<Rational>,
}

impl BetaTable {
    fn zeros(arity: Arity, cap: usize) -> Self {
        let len = (cap + 1).pow(arity.indices() as u32);
        BetaTable { arity, cap, values: vec![Rational::zero(); len] }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * (self.cap + 1) + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.values[self.offset(idx)]
    }

    fn set(&mut self, idx: &[usize], v: Rational) {
        let o = self.offset(idx);
        self.values[o] = v;
    }

    fn caps(&self) -> Vec<usize> {
        vec![self.cap; self.arity.indices()]
    }

    /// Contracts index `axis` with `mat`: `new[.., M, ..] = sum_n mat[M][n] old[.., n, ..]`.
    fn contract(&self, axis: usize, mat: &[Vec<Rational>]) -> Self {
        let mut out = BetaTable::zeros(self.arity, self.cap);
        for_each_tuple(&self.caps(), 0, |idx| {
            let mut src = idx.to_vec();
            let mut acc = Rational::zero();
            for (n, f) in mat[idx[axis]].iter().enumerate().take(idx[axis] + 1) {
                src[axis] = n;
                let b = self.get(&src);
                if !b.is_zero() {
                    acc += f * b;
                }
            }
            out.set(idx, acc);
        });
        out
    }
}

/// First index at which the two sides of the defining relation differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMismatch {
    pub index: Vec<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl BaileyPair {
    pub fn seed(kind: PairKind) -> Self {
        let arity = if kind == PairKind::P57 { Arity::Triple } else { Arity::Double };
        BaileyPair { id: kind.id().to_string(), arity, seed: kind, steps: Vec::new() }
    }

    pub fn unit(arity: Arity) -> Self {
        BaileyPair { id: PairKind::Unit.id().to_string(), arity, seed: PairKind::Unit, steps: Vec::new() }
    }

    pub fn alpha(&self, a: &QMonomial, m: usize, qv: &Rational) -> Result<Rational> {
        let base = match self.seed.alpha_weight() {
            None => {
                if m == 0 {
                    Rational::one()
                } else {
                    return Ok(Rational::zero());
                }
            }
            Some(w) => w.value(a, m, qv)?,
        };
        let mut t = Term::new(qv);
        t.scalar(&base);
        for s in &self.steps {
            s.alpha_factor(&mut t, a, m as i64)?;
        }
        t.value("alpha")
    }

    fn seed_beta(&self, a: &QMonomial, idx: &[usize], qv: &Rational) -> Result<Rational> {
        let aq = a.shift(1);
        let q = QMonomial::q();
        let mut t = Term::new(qv);
        for &n in idx {
            t.inv_poch(&q, n as i64)?;
        }
        match self.seed {
            PairKind::Unit => {
                for &n in idx {
                    t.inv_poch(&aq, n as i64)?;
                }
            }
            PairKind::P47 | PairKind::P48 => {
                let (n, l) = (idx[0] as i64, idx[1] as i64);
                t.inv_poch(&aq, n + l)?;
                if self.seed == PairKind::P48 {
                    t.qpow(n * l)?;
                }
            }
            PairKind::P57 => {
                let (n, l, k) = (idx[0] as i64, idx[1] as i64, idx[2] as i64);
                t.poch(&aq, n + l + k)?
                    .inv_poch(&aq, n + l)?
                    .inv_poch(&aq, n + k)?
                    .inv_poch(&aq, l + k)?;
            }
        }
        t.value("beta")
    }

    /// Beta on `[0, cap]^d`, obtained from the seed by applying every step.
    pub fn beta_table(&self, a: &QMonomial, cap: usize, qv: &Rational) -> Result<BetaTable> {
        let mut table = BetaTable::zeros(self.arity, cap);
        let mut err = None;
        for_each_tuple(&table.caps(), 0, |idx| match self.seed_beta(a, idx, qv) {
            Ok(v) => table.set(idx, v),
            Err(e) => err = Some(e),
        });
        if let Some(e) = err {
            return Err(e);
        }
        for step in &self.steps {
            for axis in 0..self.arity.indices() {
                let mat = step.beta_matrix(a, axis, cap, qv)?;
                table = table.contract(axis, &mat);
            }
        }
        Ok(table)
    }

    /// Right side of the defining relation at one index tuple.
    pub fn relation_sum(&self, a: &QMonomial, idx: &[usize], alphas: &[Rational], qv: &Rational) -> Result<Rational> {
        let aq = a.shift(1);
        let q = QMonomial::q();
        let top = *idx.iter().min().expect("nonempty index");
        let mut sum = Rational::zero();
        for (m, al) in alphas.iter().enumerate().take(top + 1) {
            if al.is_zero() {
                continue;
            }
            let mi = m as i64;
            let mut t = Term::new(qv);
            t.scalar(al);
            for &n in idx {
                t.inv_poch(&q, n as i64 - mi)?.inv_poch(&aq, n as i64 + mi)?;
            }
            sum += t.value("pair relation")?;
        }
        Ok(sum)
    }
}

/// Checks the defining relation at every index tuple in `[0, cap]^d`.
pub fn verify_pair(pair: &BaileyPair, a: &QMonomial, qv: &Rational, cap: usize) -> Result<Option<PairMismatch>> {
    let table = pair.beta_table(a, cap, qv)?;
    let alphas = (0..=cap).map(|m| pair.alpha(a, m, qv)).collect::<Result<Vec<_>>>()?;
    let mut found = None;
    let mut err = None;
    for_each_tuple(&table.caps(), 0, |idx| {
        if found.is_some() || err.is_some() {
            return;
        }
        match pair.relation_sum(a, idx, &alphas, qv) {
            Ok(rhs) => {
                if &rhs != table.get(idx) {
                    found = Some(PairMismatch { index: idx.to_vec(), lhs: table.get(idx).clone(), rhs });
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

fn push_step(pair: &BaileyPair, step: LemmaStep, arity: Arity, name: &str) -> Result<BaileyPair> {
    if pair.arity != arity {
        return Err(Error::InvalidSpec(format!("{name} needs a pair with {} indices", arity.indices())));
    }
    if step.params.len() != 2 * arity.indices() {
        return Err(Error::InvalidSpec(format!("{name} takes {} parameters", 2 * arity.indices())));
    }
    let mut out = pair.clone();
    out.id = format!("{}'", pair.id);
    out.steps.push(step);
    Ok(out)
}

/// One application of the first lemma with parameters `[b, c, b', c']`.
pub fn fbtl_step(pair: &BaileyPair, step: LemmaStep) -> Result<BaileyPair> {
    push_step(pair, step, Arity::Double, "first lemma")
}

/// One application of the second lemma with parameters `[b, c, b', c', b'', c'']`.
pub fn sbtl_step(pair: &BaileyPair, step: LemmaStep) -> Result<BaileyPair> {
    push_step(pair, step, Arity::Triple, "second lemma")
}

/// Left fold of the lemma matching the pair's arity.
pub fn chain_iterate(pair: &BaileyPair, steps: &[LemmaStep]) -> Result<BaileyPair> {
    steps.iter().try_fold(pair.clone(), |p, s| match p.arity {
        Arity::Double => fbtl_step(&p, s.clone()),
        Arity::Triple => sbtl_step(&p, s.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(n: i64, d: i64) -> QMonomial {
        QMonomial::from_ratio(n, d)
    }

    #[test]
    fn w_weight_matches_kernel_form() {
        let qv = rat(2, 5);
        let a = m(2, 3);
        for k in 0..5 {
            let mut t = Term::new(&qv);
            t.poch(&a, k).unwrap().kernel(&a, k).unwrap().inv_poch(&QMonomial::q(), k).unwrap();
            assert_eq!(w_weight_value(&a, k as usize, &qv).unwrap(), t.value("w").unwrap());
        }
    }

    #[test]
    fn w_weight_at_one() {
        let qv = rat(1, 3);
        for k in 1..5usize {
            let expected = int(1) + crate::rational::pow_i(&qv, k as i64).unwrap();
            assert_eq!(w_weight_value(&QMonomial::one(), k, &qv).unwrap(), expected);
            let s = w_weight_series(&QMonomial::one(), k, 12).unwrap();
            assert_eq!(s.eval_polynomial(&qv), expected);
        }
    }

    #[test]
    fn w_weight_series_general_a() {
        let a = QMonomial::new(rat(2, 3), 1);
        let order = 20;
        let s = w_weight_series(&a, 3, order).unwrap();
        let num = qpoch_series(&PochSpec::finite(a.clone(), 3), order).unwrap();
        let num = multiply_binomial(&num, &a.coeff, 7);
        let den = multiply_binomial(&qpoch_series(&PochSpec::finite(QMonomial::q(), 3), order).unwrap(), &a.coeff, 1);
        assert_eq!(s, &num * &den.recip().unwrap());
    }

    #[test]
    fn seeds_satisfy_relation() {
        let qv = rat(2, 5);
        let a = m(2, 3);
        for kind in [PairKind::Unit, PairKind::P47, PairKind::P48] {
            let p = if kind == PairKind::Unit { BaileyPair::unit(Arity::Double) } else { BaileyPair::seed(kind) };
            assert_eq!(verify_pair(&p, &a, &qv, 5).unwrap(), None, "{}", kind.id());
        }
        assert_eq!(verify_pair(&BaileyPair::seed(PairKind::P57), &a, &qv, 3).unwrap(), None);
        assert_eq!(verify_pair(&BaileyPair::unit(Arity::Triple), &a, &qv, 3).unwrap(), None);
    }

    #[test]
    fn steps_preserve_relation() {
        let qv = rat(-3, 7);
        let a = m(5, 4);
        let step = LemmaStep::new(vec![m(2, 1), m(-1, 3), m(3, 5), m(7, 2)]);
        let p = fbtl_step(&BaileyPair::seed(PairKind::P47), step.clone()).unwrap();
        assert_eq!(verify_pair(&p, &a, &qv, 3).unwrap(), None);
        let p2 = chain_iterate(&BaileyPair::seed(PairKind::P48), &[step.clone(), step]).unwrap();
        assert_eq!(verify_pair(&p2, &a, &qv, 3).unwrap(), None);
    }

    #[test]
    fn printed_form_breaks_relation() {
        let qv = rat(-3, 7);
        let a = m(5, 4);
        let step = LemmaStep::printed(vec![m(2, 1), m(-1, 3), m(3, 5), m(7, 2)]);
        let p = fbtl_step(&BaileyPair::seed(PairKind::P47), step).unwrap();
        assert!(verify_pair(&p, &a, &qv, 3).unwrap().is_some());
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let step = LemmaStep::new(vec![m(2, 1); 4]);
        assert!(sbtl_step(&BaileyPair::seed(PairKind::P47), step.clone()).is_err());
        assert!(fbtl_step(&BaileyPair::seed(PairKind::P57), step).is_err());
        assert_eq!(chain_iterate(&BaileyPair::seed(PairKind::P47), &[]).unwrap(), BaileyPair::seed(PairKind::P47));
    }

    #[test]
    fn limit_weights() {
        let w = PairKind::P47.alpha_weight().unwrap();
        assert_eq!(w.limit_step(Arity::Double), AlphaWeight { sign: true, a_power: 3, quad: 7, lin: -1 });
        assert_eq!(PairKind::P48.alpha_weight().unwrap().limit_step(Arity::Double).quad, 5);
        assert_eq!(w.limit_step(Arity::Triple), AlphaWeight { sign: true, a_power: 4, quad: 9, lin: -1 });
    }
}
