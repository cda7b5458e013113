use super::{Arity, SeqSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::Zero;

/// The sequences that drive one application of a Bailey type transform.
///
/// For two indices
/// `beta_(n,l) = sum_{m<=min(n,l)} alpha_m u_{n-m} u'_{l-m} v_{n+m} v'_{l+m} t_{n-l} w_{n+l}`
/// and
/// `gamma_m = sum_{n,l>=m} delta_n delta'_l u_{n-m} u'_{l-m} v_{n+m} v'_{l+m} t_{n-l} w_{n+l}`.
/// The three index version has no `t`, `w` and one more `delta`, `u`, `v`.
/// `bounds[i]` is the index beyond which `delta[i]` vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformChoice {
    pub arity: Arity,
    pub alpha: SeqSpec,
    pub delta: Vec<SeqSpec>,
    pub u: Vec<SeqSpec>,
    pub v: Vec<SeqSpec>,
    pub t: SeqSpec,
    pub w: SeqSpec,
    pub bounds: Vec<usize>,
}

impl TransformChoice {
    pub fn validate(&self) -> Result<()> {
        let k = self.arity.indices();
        if self.delta.len() != k || self.u.len() != k || self.v.len() != k || self.bounds.len() != k {
            return Err(Error::InvalidSpec(format!("transform needs {k} delta, u, v sequences and bounds")));
        }
        if self.arity == Arity::Triple && !(self.t.is_unit() && self.w.is_unit()) {
            return Err(Error::InvalidSpec("three index transform has no t or w weights".into()));
        }
        Ok(())
    }
}

/// Both sides of `sum alpha_m gamma_m = sum beta delta delta'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformSides {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl TransformSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

struct Table {
    lo: i64,
    vals: Vec<Rational>,
}

impl Table {
    fn build(spec: &SeqSpec, lo: i64, hi: i64, qv: &Rational) -> Result<Table> {
        let vals = (lo..=hi).map(|r| spec.eval(r, qv)).collect::<Result<Vec<_>>>()?;
        Ok(Table { lo, vals })
    }

    fn at(&self, r: i64) -> &Rational {
        &self.vals[(r - self.lo) as usize]
    }
}

/// Every sequence tabulated over exactly the index range a cap requires.
struct Tables {
    arity: Arity,
    alpha: Table,
    u: Vec<Table>,
    v: Vec<Table>,
    t: Option<Table>,
    w: Option<Table>,
}

impl Tables {
    fn build(ch: &TransformChoice, caps: &[usize], qv: &Rational) -> Result<Tables> {
        ch.validate()?;
        let min_cap = *caps.iter().min().expect("nonempty caps") as i64;
        let mut u = Vec::new();
        let mut v = Vec::new();
        for (i, &c) in caps.iter().enumerate() {
            u.push(Table::build(&ch.u[i], 0, c as i64, qv)?);
            v.push(Table::build(&ch.v[i], 0, 2 * c as i64, qv)?);
        }
        let (t, w) = if ch.arity == Arity::Double {
            let (n, l) = (caps[0] as i64, caps[1] as i64);
            (Some(Table::build(&ch.t, -l, n, qv)?), Some(Table::build(&ch.w, 0, n + l, qv)?))
        } else {
            (None, None)
        };
        Ok(Tables { arity: ch.arity, alpha: Table::build(&ch.alpha, 0, min_cap, qv)?, u, v, t, w })
    }

    /// The weight `prod u_{i}(idx_i - m) v_i(idx_i + m) * t * w` for one term.
    fn weight(&self, idx: &[usize], m: usize) -> Rational {
        let mut acc = self.coupling(idx);
        for (i, &n) in idx.iter().enumerate() {
            acc *= self.u[i].at((n - m) as i64);
            acc *= self.v[i].at((n + m) as i64);
        }
        acc
    }

    fn coupling(&self, idx: &[usize]) -> Rational {
        match (self.arity, &self.t, &self.w) {
            (Arity::Double, Some(t), Some(w)) => {
                let (n, l) = (idx[0] as i64, idx[1] as i64);
                t.at(n - l) * w.at(n + l)
            }
            _ => Rational::from_integer(1.into()),
        }
    }

    fn beta(&self, idx: &[usize]) -> Rational {
        let top = *idx.iter().min().expect("nonempty index");
        let mut sum = Rational::zero();
        for m in 0..=top {
            let a = self.alpha.at(m as i64);
            if !a.is_zero() {
                sum += a * self.weight(idx, m);
            }
        }
        sum
    }
}

/// Calls `f` on every index tuple with `lower <= idx_i <= caps[i]`.
pub(crate) fn for_each_tuple(caps: &[usize], lower: usize, mut f: impl FnMut(&[usize])) {
    if caps.iter().any(|&c| c < lower) {
        return;
    }
    let mut idx: Vec<usize> = vec![lower; caps.len()];
    loop {
        f(&idx);
        let mut i = caps.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < caps[i] {
                idx[i] += 1;
                for j in idx.iter_mut().skip(i + 1) {
                    *j = lower;
                }
                break;
            }
        }
    }
}

/// Calls `f` on every index tuple in the box `[0, caps]`, last index fastest.
pub fn for_each_index(caps: &[usize], f: impl FnMut(&[usize])) {
    for_each_tuple(caps, 0, f)
}

/// `beta` at one index tuple by direct summation over `m`.
pub fn beta_from_alpha(ch: &TransformChoice, idx: &[usize], qv: &Rational) -> Result<Rational> {
    Ok(Tables::build(ch, idx, qv)?.beta(idx))
}

/// `gamma_m` by direct summation over all tuples up to the delta bounds.
pub fn gamma_from_delta(ch: &TransformChoice, m: usize, qv: &Rational) -> Result<Rational> {
    let tables = Tables::build(ch, &ch.bounds, qv)?;
    let deltas = delta_tables(ch, qv)?;
    Ok(gamma(&tables, &deltas, &ch.bounds, m))
}

fn delta_tables(ch: &TransformChoice, qv: &Rational) -> Result<Vec<Table>> {
    ch.delta
        .iter()
        .zip(&ch.bounds)
        .map(|(d, &b)| Table::build(d, 0, b as i64, qv))
        .collect()
}

fn gamma(tables: &Tables, deltas: &[Table], bounds: &[usize], m: usize) -> Rational {
    let mut sum = Rational::zero();
    for_each_tuple(bounds, m, |idx| {
        let mut d = Rational::from_integer(1.into());
        for (i, &n) in idx.iter().enumerate() {
            d *= deltas[i].at(n as i64);
        }
        if !d.is_zero() {
            sum += d * tables.weight(idx, m);
        }
    });
    sum
}

/// Both sides of the transform identity, each by direct finite summation.
pub fn check_transform(ch: &TransformChoice, qv: &Rational) -> Result<TransformSides> {
    let tables = Tables::build(ch, &ch.bounds, qv)?;
    let deltas = delta_tables(ch, qv)?;
    let top = *ch.bounds.iter().min().expect("nonempty bounds");
    let mut lhs = Rational::zero();
    for m in 0..=top {
        let a = tables.alpha.at(m as i64);
        if !a.is_zero() {
            lhs += a * gamma(&tables, &deltas, &ch.bounds, m);
        }
    }
    let mut rhs = Rational::zero();
    for_each_tuple(&ch.bounds, 0, |idx| {
        let mut d = tables.beta(idx);
        for (i, &n) in idx.iter().enumerate() {
            d *= deltas[i].at(n as i64);
        }
        rhs += d;
    });
    Ok(TransformSides { lhs, rhs })
}

/// The rearrangement `sum_{m,n,l} A(m,n,l) = sum_{n,l} sum_{m<=min(n,l)} A(m,n-m,l-m)`
/// for `A` supported on `[0, size)^3`; returns both sides.
pub fn reorder_double(size: usize, a: impl Fn(usize, usize, usize) -> Rational) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    for m in 0..size {
        for n in 0..size {
            for l in 0..size {
                lhs += a(m, n, l);
            }
        }
    }
    let mut rhs = Rational::zero();
    let span = 2 * size;
    for n in 0..span {
        for l in 0..span {
            for m in 0..=n.min(l) {
                let (i, j) = (n - m, l - m);
                if m < size && i < size && j < size {
                    rhs += a(m, i, j);
                }
            }
        }
    }
    (lhs, rhs)
}

/// Four index analogue of [`reorder_double`].
pub fn reorder_triple(size: usize, a: impl Fn(usize, usize, usize, usize) -> Rational) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    let cube = [size; 4];
    for_each_tuple(&cube.map(|s| s - 1), 0, |i| lhs += a(i[0], i[1], i[2], i[3]));
    let mut rhs = Rational::zero();
    let span = [2 * size - 1; 3];
    for_each_tuple(&span, 0, |i| {
        let top = i[0].min(i[1]).min(i[2]);
        for m in 0..=top {
            let (x, y, z) = (i[0] - m, i[1] - m, i[2] - m);
            if m < size && x < size && y < size && z < size {
                rhs += a(m, x, y, z);
            }
        }
    });
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::QMonomial;
    use crate::rational::{int, rat};

    fn unit_choice(arity: Arity, bounds: Vec<usize>) -> TransformChoice {
        let k = arity.indices();
        TransformChoice {
            arity,
            alpha: SeqSpec::unit(),
            delta: vec![SeqSpec::unit(); k],
            u: vec![SeqSpec::unit(); k],
            v: vec![SeqSpec::unit(); k],
            t: SeqSpec::unit(),
            w: SeqSpec::unit(),
            bounds,
        }
    }

    #[test]
    fn all_unit_sequences_at_zero() {
        let ch = unit_choice(Arity::Double, vec![0, 0]);
        let sides = check_transform(&ch, &rat(1, 2)).unwrap();
        assert!(sides.holds());
        assert_eq!(sides.lhs, int(1));
    }

    #[test]
    fn single_term_beta() {
        let qv = rat(1, 3);
        let mut ch = unit_choice(Arity::Double, vec![0, 0]);
        ch.alpha = SeqSpec::new("alpha").ratio(QMonomial::from_ratio(5, 2));
        ch.w = SeqSpec::new("w").ratio(QMonomial::from_ratio(7, 1));
        assert_eq!(beta_from_alpha(&ch, &[0, 0], &qv).unwrap(), int(1));
    }

    #[test]
    fn gamma_examples() {
        let qv = rat(1, 3);
        let mut ch = unit_choice(Arity::Double, vec![1, 2]);
        assert_eq!(gamma_from_delta(&ch, 3, &qv).unwrap(), int(0));
        ch.bounds = vec![0, 0];
        ch.delta = vec![SeqSpec::delta_at_zero(); 2];
        assert_eq!(gamma_from_delta(&ch, 0, &qv).unwrap(), int(1));
    }

    #[test]
    fn tuples_are_enumerated_once() {
        let mut seen = Vec::new();
        for_each_tuple(&[1, 2], 0, |i| seen.push(i.to_vec()));
        assert_eq!(seen.len(), 6);
        let mut above = 0;
        for_each_tuple(&[2, 2, 2], 1, |_| above += 1);
        assert_eq!(above, 8);
        let mut none = 0;
        for_each_tuple(&[0, 3], 1, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn triple_rejects_coupling_weights() {
        let mut ch = unit_choice(Arity::Triple, vec![1, 1, 1]);
        ch.t = SeqSpec::new("t").ratio(QMonomial::from_ratio(2, 1));
        assert!(check_transform(&ch, &rat(1, 2)).is_err());
    }
}
