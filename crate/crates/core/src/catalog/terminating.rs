//! The five terminating double and triple sum identities together with the
//! transform choices and closed beta/gamma forms that produce them.

use super::sampling::Sampler;
use crate::bailey::{Arity, Param, ParamPoint, SeqSpec, TransformChoice};
use crate::error::Result;
use crate::hypergeom::{vwp_eval, VwpSpec};
use crate::monomial::QMonomial;
use crate::qpoch::Term;
use crate::rational::Rational;
use num_traits::Zero;

type Eval<'a, T> = Box<dyn Fn(T) -> Result<Rational> + Send + Sync + 'a>;

/// Everything needed to check one identity and its derivation at one point.
pub struct Derivation {
    pub point: ParamPoint,
    pub choice: TransformChoice,
    pub beta: Eval<'static, Vec<usize>>,
    pub gamma: Eval<'static, usize>,
    pub lhs: Eval<'static, ()>,
    pub rhs: Eval<'static, ()>,
}

fn q() -> QMonomial {
    QMonomial::q()
}

fn qp(e: i64) -> QMonomial {
    QMonomial::q_pow(e)
}

fn u_q() -> SeqSpec {
    SeqSpec::new("u").den([q()]).ratio(q())
}

fn inv_qa(a: &QMonomial) -> SeqSpec {
    SeqSpec::new("v").den([a.shift(1)])
}

/// `prod (x)_M / prod (y)_M`.
fn ratio_at(t: &mut Term<'_>, num: &[QMonomial], den: &[QMonomial], n: i64) -> Result<()> {
    t.pochs(num, n)?.inv_pochs(den, n)?;
    Ok(())
}

fn vwp(a: &QMonomial, tail: Vec<QMonomial>, z: QMonomial, top: usize, qv: &Rational) -> Result<Rational> {
    vwp_eval(&VwpSpec::new(a.clone(), tail, z, top)?, qv)
}

pub const EQ_PARAMS: [&[Param]; 5] = [
    &[Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::D],
    &[Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::BigA, Param::BigB],
    &[Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::D],
    &[Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::BigA],
    &[Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::B2, Param::C2],
];

/// Samples a point for identity `which` (1..=5) and assembles its derivation.
pub fn derivation(which: usize, s: &mut Sampler) -> Derivation {
    let ncaps = if which == 5 { 3 } else { 2 };
    let point = s.point(EQ_PARAMS[which - 1], ncaps);
    match which {
        1 => eq1(point),
        2 => eq2(point),
        3 => eq3(point),
        4 => eq4(point),
        _ => eq5(point),
    }
}

fn eq1(point: ParamPoint) -> Derivation {
    let [a, b, c, b1, c1, d] = [Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::D].map(|p| point.get(p).clone());
    let (mm, nn) = (point.cap(0), point.cap(1));
    let (mi, ni) = (mm as i64, nn as i64);
    let qv = point.qv.clone();
    let qa = a.shift(1);
    let qm = qp(-mi);
    let qn = qp(-ni);
    let choice = TransformChoice {
        arity: Arity::Double,
        alpha: SeqSpec::new("alpha")
            .num([a.clone(), d.clone()])
            .kernel(a.clone())
            .den([&qa / &d, q()])
            .ratio(&a.shift(3) / &d)
            .quad(2),
        delta: vec![
            SeqSpec::new("delta").num([b.clone(), c.clone(), qm.clone()]).den([&(&b * &c) * &qm / a.clone()]),
            SeqSpec::new("delta'").num([b1.clone(), c1.clone(), qn.clone()]).den([&(&b1 * &c1) * &qn / a.clone()]),
        ],
        u: vec![u_q(), u_q()],
        v: vec![inv_qa(&a), inv_qa(&a)],
        t: SeqSpec::unit(),
        w: SeqSpec::unit(),
        bounds: vec![mm, nn],
    };
    let pre_num_m = [&qa / &b, &qa / &c];
    let pre_den_m = [qa.clone(), &qa / &(&b * &c)];
    let pre_num_n = [&qa / &b1, &qa / &c1];
    let pre_den_n = [qa.clone(), &qa / &(&b1 * &c1)];
    let pre = {
        let (qv, pnm, pdm, pnn, pdn) = (qv.clone(), pre_num_m.clone(), pre_den_m.clone(), pre_num_n.clone(), pre_den_n.clone());
        move || -> Result<Rational> {
            let mut t = Term::new(&qv);
            ratio_at(&mut t, &pnm, &pdm, mi)?;
            ratio_at(&mut t, &pnn, &pdn, ni)?;
            t.value("prefactor")
        }
    };
    let beta = {
        let (qv, qa, qad) = (qv.clone(), qa.clone(), &qa / &d);
        Box::new(move |idx: Vec<usize>| {
            let (n, l) = (idx[0] as i64, idx[1] as i64);
            let mut t = Term::new(&qv);
            t.poch(&qad, n + l)?.qpow(n + l)?.inv_poch(&qa, n + l)?;
            t.inv_pochs(&[qad.clone(), q()], n)?.inv_pochs(&[qad.clone(), q()], l)?;
            t.value("beta")
        }) as Eval<'static, Vec<usize>>
    };
    let gamma = {
        let qv = qv.clone();
        let num = [b.clone(), c.clone(), b1.clone(), c1.clone(), qm.clone(), qn.clone()];
        let den = [&qa / &b, &qa / &c, &qa / &b1, &qa / &c1, a.shift(1 + mi), a.shift(1 + ni)];
        let z = &(&a * &a).shift(mi + ni) / &(&(&b * &c) * &(&b1 * &c1));
        let pre = pre.clone();
        Box::new(move |m: usize| {
            let m = m as i64;
            let mut t = Term::new(&qv);
            t.scalar(&pre()?);
            ratio_at(&mut t, &num, &den, m)?;
            t.qpow(-m * m + m)?.power(&z, m)?;
            t.value("gamma")
        }) as Eval<'static, usize>
    };
    let lhs = {
        let (qv, qa, qad) = (qv.clone(), qa.clone(), &qa / &d);
        let dn = [qad.clone(), &(&b * &c) * &qm / a.clone(), q()];
        let dl = [qad.clone(), &(&b1 * &c1) * &qn / a.clone(), q()];
        let (nn_, nl) = ([b.clone(), c.clone(), qm.clone()], [b1.clone(), c1.clone(), qn.clone()]);
        Box::new(move |_: ()| {
            let mut sum = Rational::zero();
            for n in 0..=mi {
                for l in 0..=ni {
                    let mut t = Term::new(&qv);
                    t.poch(&qad, n + l)?.inv_poch(&qa, n + l)?;
                    ratio_at(&mut t, &nn_, &dn, n)?;
                    ratio_at(&mut t, &nl, &dl, l)?;
                    t.qpow(n + l)?;
                    sum += t.value("lhs")?;
                }
            }
            Ok(sum)
        }) as Eval<'static, ()>
    };
    let rhs = {
        let qv = qv.clone();
        let z = &(&a * &a * a.clone()).shift(3 + mi + ni) / &(&(&b * &c) * &(&(&b1 * &c1) * &d));
        let tail = vec![d.clone(), b.clone(), c.clone(), b1.clone(), c1.clone(), qm.clone(), qn.clone()];
        let a = a.clone();
        Box::new(move |_: ()| Ok(pre()? * vwp(&a, tail.clone(), z.clone(), mm.min(nn), &qv)?)) as Eval<'static, ()>
    };
    Derivation { point, choice, beta, gamma, lhs, rhs }
}

fn eq2(point: ParamPoint) -> Derivation {
    let [a, b, c, b1, c1, ba, bb] =
        [Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::BigA, Param::BigB].map(|p| point.get(p).clone());
    let (mm, nn) = (point.cap(0), point.cap(1));
    let (mi, ni) = (mm as i64, nn as i64);
    let qv = point.qv.clone();
    let qa = a.shift(1);
    let qm = qp(-mi);
    let qn = qp(-ni);
    let ab = &ba * &bb;
    let aa = &a * &a;
    let ab_a = &ab / &a;
    let big_m = &(&ba * &a).shift(1 + mi) / &(&b * &c);
    let big_n = &(&bb * &a).shift(1 + ni) / &(&b1 * &c1);
    let delta = |big: &QMonomial, x: &QMonomial, y: &QMonomial, top: &QMonomial, qt: &QMonomial, shift: i64, label: &str| {
        SeqSpec::new(label)
            .kernel(big.clone())
            .num([x.clone(), y.clone(), top.clone(), qt.clone()])
            .den([&big.shift(1) / x, &big.shift(1) / y, &(x * y) * qt / a.clone(), big.shift(1 + shift)])
    };
    let choice = TransformChoice {
        arity: Arity::Double,
        alpha: SeqSpec::new("alpha")
            .num([a.clone(), &aa.shift(1) / &ab])
            .kernel(a.clone())
            .ratio(&ab.shift(1) / &aa)
            .den([ab_a.clone(), q()]),
        delta: vec![delta(&ba, &b, &c, &big_m, &qm, mi, "delta"), delta(&bb, &b1, &c1, &big_n, &qn, ni, "delta'")],
        u: vec![
            SeqSpec::new("u").num([&ba / &a]).den([q()]).ratio(q()),
            SeqSpec::new("u'").num([&bb / &a]).den([q()]).ratio(q()),
        ],
        v: vec![
            SeqSpec::new("v").num([ba.clone()]).den([qa.clone()]),
            SeqSpec::new("v'").num([bb.clone()]).den([qa.clone()]),
        ],
        t: SeqSpec::unit(),
        w: SeqSpec::unit(),
        bounds: vec![mm, nn],
    };
    let pre = {
        let qv = qv.clone();
        let nm = [ba.shift(1), &qa / &b, &qa / &c, &ba.shift(1) / &(&b * &c)];
        let dm = [qa.clone(), &ba.shift(1) / &b, &ba.shift(1) / &c, &qa / &(&b * &c)];
        let nnn = [bb.shift(1), &qa / &b1, &qa / &c1, &bb.shift(1) / &(&b1 * &c1)];
        let dn = [qa.clone(), &bb.shift(1) / &b1, &bb.shift(1) / &c1, &qa / &(&b1 * &c1)];
        move || -> Result<Rational> {
            let mut t = Term::new(&qv);
            ratio_at(&mut t, &nm, &dm, mi)?;
            ratio_at(&mut t, &nnn, &dn, ni)?;
            t.value("prefactor")
        }
    };
    let beta = {
        let qv = qv.clone();
        let (ba_a, qa_b, qa_a) = (&ba / &a, &qa / &bb, &qa / &ba);
        let (qa, ab_a, ba, bb) = (qa.clone(), ab_a.clone(), ba.clone(), bb.clone());
        let z = &ab / &aa;
        Box::new(move |idx: Vec<usize>| {
            let (n, l) = (idx[0] as i64, idx[1] as i64);
            let mut t = Term::new(&qv);
            t.poch(&ba_a, n - l)?.inv_poch(&qa_b, n - l)?;
            t.poch(&ab_a, n + l)?.inv_poch(&qa, n + l)?;
            ratio_at(&mut t, &[ba.clone(), qa_b.clone()], &[ab_a.clone(), q()], n)?;
            ratio_at(&mut t, &[bb.clone(), qa_a.clone()], &[ab_a.clone(), q()], l)?;
            t.qpow(n)?.power(&z, l)?;
            t.value("beta")
        }) as Eval<'static, Vec<usize>>
    };
    let gamma = {
        let qv = qv.clone();
        let num = [b.clone(), c.clone(), big_m.clone(), qm.clone(), b1.clone(), c1.clone(), big_n.clone(), qn.clone()];
        let den = [
            &qa / &b,
            &qa / &c,
            &(&b * &c) * &qm / ba.clone(),
            a.shift(1 + mi),
            &qa / &b1,
            &qa / &c1,
            &(&b1 * &c1) * &qn / bb.clone(),
            a.shift(1 + ni),
        ];
        let z = &aa / &ab;
        let pre = pre.clone();
        Box::new(move |m: usize| {
            let m = m as i64;
            let mut t = Term::new(&qv);
            t.scalar(&pre()?);
            ratio_at(&mut t, &num, &den, m)?;
            t.power(&z, m)?;
            t.value("gamma")
        }) as Eval<'static, usize>
    };
    let lhs = {
        let qv = qv.clone();
        let (ba_a, qa_b, qa_a) = (&ba / &a, &qa / &bb, &qa / &ba);
        let numn = [ba.clone(), b.clone(), c.clone(), big_m.clone(), qa_b.clone(), qm.clone()];
        let denn = [&ba.shift(1) / &b, &ba.shift(1) / &c, &(&b * &c) * &qm / a.clone(), ab_a.clone(), ba.shift(1 + mi)];
        let numl = [bb.clone(), b1.clone(), c1.clone(), big_n.clone(), qa_a.clone(), qn.clone()];
        let denl = [&bb.shift(1) / &b1, &bb.shift(1) / &c1, &(&b1 * &c1) * &qn / a.clone(), ab_a.clone(), bb.shift(1 + ni)];
        let (qa, ab_a, ba, bb) = (qa.clone(), ab_a.clone(), ba.clone(), bb.clone());
        let z = &ab / &aa;
        Box::new(move |_: ()| {
            let mut sum = Rational::zero();
            for n in 0..=mi {
                for l in 0..=ni {
                    let mut t = Term::new(&qv);
                    t.poch(&ba_a, n - l)?.inv_poch(&qa_b, n - l)?;
                    t.poch(&ab_a, n + l)?.inv_poch(&qa, n + l)?;
                    t.kernel(&ba, n)?;
                    ratio_at(&mut t, &numn, &denn, n)?;
                    t.kernel(&bb, l)?;
                    ratio_at(&mut t, &numl, &denl, l)?;
                    t.qpow(n)?.power(&z, l)?.inv_poch(&q(), n)?.inv_poch(&q(), l)?;
                    sum += t.value("lhs")?;
                }
            }
            Ok(sum)
        }) as Eval<'static, ()>
    };
    let rhs = {
        let qv = qv.clone();
        let tail = vec![&aa.shift(1) / &ab, b.clone(), c.clone(), b1.clone(), c1.clone(), big_m.clone(), big_n.clone(), qm.clone(), qn.clone()];
        let a = a.clone();
        Box::new(move |_: ()| Ok(pre()? * vwp(&a, tail.clone(), q(), mm.min(nn), &qv)?)) as Eval<'static, ()>
    };
    Derivation { point, choice, beta, gamma, lhs, rhs }
}

/// Shared pieces of the third and fourth identities: the first delta, which
/// runs up to `N`, and the `N` half of the prefactor.
struct ThirdFourth {
    a: QMonomial,
    b: QMonomial,
    c: QMonomial,
    b1: QMonomial,
    c1: QMonomial,
    qm: QMonomial,
    qn: QMonomial,
    mi: i64,
    ni: i64,
}

impl ThirdFourth {
    fn new(point: &ParamPoint) -> Self {
        let (mi, ni) = (point.cap(0) as i64, point.cap(1) as i64);
        ThirdFourth {
            a: point.get(Param::A).clone(),
            b: point.get(Param::B).clone(),
            c: point.get(Param::C).clone(),
            b1: point.get(Param::B1).clone(),
            c1: point.get(Param::C1).clone(),
            qm: qp(-mi),
            qn: qp(-ni),
            mi,
            ni,
        }
    }

    fn big_n(&self) -> QMonomial {
        &(&self.a * &self.b1).shift(1 + self.ni) / &(&self.b * &self.c)
    }

    fn delta_num(&self) -> Vec<QMonomial> {
        let ThirdFourth { a, b, c, b1, c1, qm, qn, .. } = self;
        vec![b.clone(), c.clone(), self.big_n(), qn.clone(), &(b1 * c1) / a, &(b1 * qm) / a]
    }

    fn delta_den(&self) -> Vec<QMonomial> {
        let ThirdFourth { a, b, c, b1, qn, ni, .. } = self;
        vec![&b1.shift(1) / b, &b1.shift(1) / c, &(b * c) * qn / a.clone(), b1.shift(1 + ni)]
    }

    fn pre_n(&self) -> (Vec<QMonomial>, Vec<QMonomial>) {
        let ThirdFourth { a, b, c, b1, .. } = self;
        let qa = a.shift(1);
        (
            vec![b1.shift(1), &qa / b, &qa / c, &b1.shift(1) / &(b * c)],
            vec![qa.clone(), &b1.shift(1) / b, &b1.shift(1) / c, &qa / &(b * c)],
        )
    }

    fn gamma_num(&self) -> Vec<QMonomial> {
        let ThirdFourth { b, c, c1, qm, qn, .. } = self;
        vec![b.clone(), c.clone(), c1.clone(), self.big_n(), qm.clone(), qn.clone()]
    }

    fn gamma_den(&self) -> Vec<QMonomial> {
        let ThirdFourth { a, b, c, b1, c1, qn, mi, ni, .. } = self;
        let qa = a.shift(1);
        vec![&qa / b, &qa / c, &qa / c1, &(b * c) * qn / b1.clone(), a.shift(1 + mi), a.shift(1 + ni)]
    }
}

fn eq3(point: ParamPoint) -> Derivation {
    let tf = ThirdFourth::new(&point);
    let d = point.get(Param::D).clone();
    let (mm, nn) = (point.cap(0), point.cap(1));
    let ThirdFourth { a, b, c, b1, c1, qm, qn, mi, ni } = ThirdFourth::new(&point);
    let qv = point.qv.clone();
    let qa = a.shift(1);
    let qad = &qa / &d;
    let x_a = &(&b1 * &c1) * &qm / a.clone();
    let choice = TransformChoice {
        arity: Arity::Double,
        alpha: SeqSpec::new("alpha")
            .num([a.clone(), d.clone()])
            .kernel(a.clone())
            .den([qad.clone(), q()])
            .ratio(&a.shift(3) / &d)
            .quad(2),
        delta: vec![
            SeqSpec::new("delta").kernel(b1.clone()).num(tf.delta_num()).den(tf.delta_den()),
            SeqSpec::new("delta'").num([c1.clone(), qm.clone()]),
        ],
        u: vec![u_q(), u_q()],
        v: vec![inv_qa(&a), inv_qa(&a)],
        t: SeqSpec::unit(),
        w: SeqSpec::new("w").num([b1.clone()]).den([x_a.clone()]),
        bounds: vec![nn, mm],
    };
    let pre = {
        let qv = qv.clone();
        let nm = [&qa / &b1, &qa / &c1];
        let dm = [qa.clone(), &qa / &(&b1 * &c1)];
        let (nnn, dn) = tf.pre_n();
        move || -> Result<Rational> {
            let mut t = Term::new(&qv);
            ratio_at(&mut t, &nm, &dm, mi)?;
            ratio_at(&mut t, &nnn, &dn, ni)?;
            t.value("prefactor")
        }
    };
    let beta = {
        let qv = qv.clone();
        let (top, bot) = ([b1.clone(), qad.clone()], [qa.clone(), x_a.clone()]);
        let qad = qad.clone();
        Box::new(move |idx: Vec<usize>| {
            let (n, l) = (idx[0] as i64, idx[1] as i64);
            let mut t = Term::new(&qv);
            ratio_at(&mut t, &top, &bot, n + l)?;
            t.qpow(n + l)?;
            t.inv_pochs(&[qad.clone(), q()], n)?.inv_pochs(&[qad.clone(), q()], l)?;
            t.value("beta")
        }) as Eval<'static, Vec<usize>>
    };
    let gamma = {
        let qv = qv.clone();
        let (num, den) = (tf.gamma_num(), tf.gamma_den());
        let z = &a / &(&b1 * &c1);
        let pre = pre.clone();
        Box::new(move |m: usize| {
            let m = m as i64;
            let mut t = Term::new(&qv);
            t.scalar(&pre()?);
            ratio_at(&mut t, &num, &den, m)?;
            t.power(&z, m)?.qpow(-m * m + m * mi)?;
            t.value("gamma")
        }) as Eval<'static, usize>
    };
    let lhs = {
        let qv = qv.clone();
        let (top, bot) = ([b1.clone(), qad.clone()], [qa.clone(), x_a.clone()]);
        let numn = [c1.clone(), qm.clone()];
        let denn = [qad.clone(), q()];
        let numl = tf.delta_num();
        let mut denl = tf.delta_den();
        denl.extend([qad.clone(), q()]);
        let b1 = b1.clone();
        Box::new(move |_: ()| {
            let mut sum = Rational::zero();
            for n in 0..=mi {
                for l in 0..=ni {
                    let mut t = Term::new(&qv);
                    ratio_at(&mut t, &top, &bot, n + l)?;
                    ratio_at(&mut t, &numn, &denn, n)?;
                    t.kernel(&b1, l)?;
                    ratio_at(&mut t, &numl, &denl, l)?;
                    t.qpow(n + l)?;
                    sum += t.value("lhs")?;
                }
            }
            Ok(sum)
        }) as Eval<'static, ()>
    };
    let rhs = {
        let qv = qv.clone();
        let tail = vec![d.clone(), b.clone(), c.clone(), c1.clone(), tf.big_n(), qm.clone(), qn.clone()];
        let z = &(&a * &a).shift(2 + mi) / &(&(&b1 * &c1) * &d);
        let a = a.clone();
        Box::new(move |_: ()| Ok(pre()? * vwp(&a, tail.clone(), z.clone(), mm.min(nn), &qv)?)) as Eval<'static, ()>
    };
    Derivation { point, choice, beta, gamma, lhs, rhs }
}

fn eq4(point: ParamPoint) -> Derivation {
    let tf = ThirdFourth::new(&point);
    let ba = point.get(Param::BigA).clone();
    let (mm, nn) = (point.cap(0), point.cap(1));
    let ThirdFourth { a, b, c, b1, c1, qm, qn, mi, ni } = ThirdFourth::new(&point);
    let qv = point.qv.clone();
    let qa = a.shift(1);
    let aa = &a * &a;
    let x = &(&b1 * &c1) * &qm;
    let x_a = &x / &a;
    let qa_a = &qa / &ba;
    let mut d0_den = tf.delta_den();
    d0_den.extend([&(&b1 * &qm) / &ba, &(&b1 * &c1) / &ba]);
    let big_l = &(&ba * &a).shift(1 + mi) / &(&b1 * &c1);
    let choice = TransformChoice {
        arity: Arity::Double,
        alpha: SeqSpec::new("alpha")
            .num([a.clone(), &aa.shift(1) / &x])
            .kernel(a.clone())
            .ratio(&x.shift(1) / &aa)
            .den([x_a.clone(), q()]),
        delta: vec![
            SeqSpec::new("delta").kernel(b1.clone()).num(tf.delta_num()).den(d0_den.clone()),
            SeqSpec::new("delta'")
                .kernel(ba.clone())
                .num([c1.clone(), qm.clone()])
                .den([&ba.shift(1) / &c1, ba.shift(1 + mi)])
                .ratio(&a.shift(mi) / &c1),
        ],
        u: vec![
            SeqSpec::new("u").num([&x / &(&ba * &a)]).den([q()]).ratio(q()),
            SeqSpec::new("u'").num([&ba / &a]).den([q()]).ratio(q()),
        ],
        v: vec![
            SeqSpec::new("v").num([&x / &ba]).den([qa.clone()]),
            SeqSpec::new("v'").num([ba.clone()]).den([qa.clone()]),
        ],
        t: SeqSpec::new("t").num([&b1 / &ba]).den([&x / &(&ba * &a)]),
        w: SeqSpec::new("w").num([b1.clone()]).den([x_a.clone()]),
        bounds: vec![nn, mm],
    };
    let pre = {
        let qv = qv.clone();
        let nm = [ba.shift(1), &qa / &b1, &qa / &c1, &ba.shift(1) / &(&b1 * &c1)];
        let dm = [qa.clone(), &ba.shift(1) / &b1, &ba.shift(1) / &c1, &qa / &(&b1 * &c1)];
        let (nnn, dn) = tf.pre_n();
        move || -> Result<Rational> {
            let mut t = Term::new(&qv);
            ratio_at(&mut t, &nm, &dm, mi)?;
            ratio_at(&mut t, &nnn, &dn, ni)?;
            t.value("prefactor")
        }
    };
    let beta = {
        let qv = qv.clone();
        let (b1_a, qa, qa_a, b1) = (&b1 / &ba, qa.clone(), qa_a.clone(), b1.clone());
        let numn = [&x / &ba, qa_a.clone()];
        let numl = [ba.clone(), &(&a * &ba).shift(1) / &x];
        let den = [q(), x_a.clone()];
        let z = &x / &aa;
        Box::new(move |idx: Vec<usize>| {
            let (n, l) = (idx[0] as i64, idx[1] as i64);
            let mut t = Term::new(&qv);
            t.poch(&b1_a, n - l)?.inv_poch(&qa_a, n - l)?;
            t.poch(&b1, n + l)?.inv_poch(&qa, n + l)?;
            ratio_at(&mut t, &numn, &den, n)?;
            ratio_at(&mut t, &numl, &den, l)?;
            t.qpow(n)?.power(&z, l)?;
            t.value("beta")
        }) as Eval<'static, Vec<usize>>
    };
    let gamma = {
        let qv = qv.clone();
        let (num, den) = (tf.gamma_num(), tf.gamma_den());
        let z = &aa.shift(mi) / &(&b1 * &c1);
        let pre = pre.clone();
        Box::new(move |m: usize| {
            let m = m as i64;
            let mut t = Term::new(&qv);
            t.scalar(&pre()?);
            ratio_at(&mut t, &num, &den, m)?;
            t.power(&z, m)?;
            t.value("gamma")
        }) as Eval<'static, usize>
    };
    let lhs = {
        let qv = qv.clone();
        let (b1_a, qa, qa_a) = (&b1 / &ba, qa.clone(), qa_a.clone());
        let mut numn = tf.delta_num();
        numn.extend([&x / &ba, qa_a.clone()]);
        let mut denn = d0_den.clone();
        denn.push(x_a.clone());
        let numl = [c1.clone(), ba.clone(), big_l.clone(), qm.clone()];
        let denl = [&ba.shift(1) / &c1, x_a.clone(), ba.shift(1 + mi)];
        let z = &b1 / &a;
        let (b1, ba) = (b1.clone(), ba.clone());
        Box::new(move |_: ()| {
            let mut sum = Rational::zero();
            for n in 0..=ni {
                for l in 0..=mi {
                    let mut t = Term::new(&qv);
                    t.poch(&b1_a, n - l)?.inv_poch(&qa_a, n - l)?;
                    t.poch(&b1, n + l)?.inv_poch(&qa, n + l)?;
                    t.kernel(&b1, n)?;
                    ratio_at(&mut t, &numn, &denn, n)?;
                    t.kernel(&ba, l)?;
                    ratio_at(&mut t, &numl, &denl, l)?;
                    t.qpow(n)?.power(&z, l)?.inv_poch(&q(), n)?.inv_poch(&q(), l)?;
                    sum += t.value("lhs")?;
                }
            }
            Ok(sum)
        }) as Eval<'static, ()>
    };
    let rhs = {
        let qv = qv.clone();
        let tail = vec![b.clone(), c.clone(), c1.clone(), &aa.shift(1 + mi) / &(&b1 * &c1), tf.big_n(), qm.clone(), qn.clone()];
        let a = a.clone();
        Box::new(move |_: ()| Ok(pre()? * vwp(&a, tail.clone(), q(), mm.min(nn), &qv)?)) as Eval<'static, ()>
    };
    Derivation { point, choice, beta, gamma, lhs, rhs }
}

fn eq5(point: ParamPoint) -> Derivation {
    let a = point.get(Param::A).clone();
    let pairs = [
        (point.get(Param::B).clone(), point.get(Param::C).clone(), point.cap(0)),
        (point.get(Param::B1).clone(), point.get(Param::C1).clone(), point.cap(1)),
        (point.get(Param::B2).clone(), point.get(Param::C2).clone(), point.cap(2)),
    ];
    let qv = point.qv.clone();
    let qa = a.shift(1);
    let top = pairs.iter().map(|p| p.2).min().expect("three caps");
    let choice = TransformChoice {
        arity: Arity::Triple,
        alpha: SeqSpec::new("alpha")
            .num([a.clone()])
            .kernel(a.clone())
            .den([q()])
            .ratio(-a.shift(4))
            .quad(3),
        delta: pairs
            .iter()
            .map(|(b, c, cap)| {
                let qt = qp(-(*cap as i64));
                SeqSpec::new("delta").num([b.clone(), c.clone(), qt.clone()]).den([&(b * c) * &qt / a.clone()])
            })
            .collect(),
        u: vec![u_q(); 3],
        v: vec![inv_qa(&a); 3],
        t: SeqSpec::unit(),
        w: SeqSpec::unit(),
        bounds: pairs.iter().map(|p| p.2).collect(),
    };
    let pre = {
        let qv = qv.clone();
        let parts: Vec<_> = pairs
            .iter()
            .map(|(b, c, cap)| ([&qa / b, &qa / c], [qa.clone(), &qa / &(b * c)], *cap as i64))
            .collect();
        move || -> Result<Rational> {
            let mut t = Term::new(&qv);
            for (num, den, cap) in &parts {
                ratio_at(&mut t, num, den, *cap)?;
            }
            t.value("prefactor")
        }
    };
    let prod: QMonomial = pairs.iter().fold(QMonomial::one(), |acc, (b, c, _)| &acc * &(b * c));
    let caps_sum: i64 = pairs.iter().map(|p| p.2 as i64).sum();
    let beta_closed = {
        let (qv, qa) = (qv.clone(), qa.clone());
        move |idx: &[usize]| -> Result<Rational> {
            let (n, l, k) = (idx[0] as i64, idx[1] as i64, idx[2] as i64);
            let mut t = Term::new(&qv);
            t.poch(&qa, n + l + k)?.qpow(n + l + k)?;
            t.inv_poch(&qa, n + l)?.inv_poch(&qa, n + k)?.inv_poch(&qa, l + k)?;
            t.inv_poch(&q(), n)?.inv_poch(&q(), l)?.inv_poch(&q(), k)?;
            t.value("beta")
        }
    };
    let beta = {
        let f = beta_closed.clone();
        Box::new(move |idx: Vec<usize>| f(&idx)) as Eval<'static, Vec<usize>>
    };
    let gamma = {
        let qv = qv.clone();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (b, c, _) in &pairs {
            num.extend([b.clone(), c.clone()]);
            den.extend([&qa / b, &qa / c]);
        }
        for (_, _, cap) in &pairs {
            num.push(qp(-(*cap as i64)));
            den.push(a.shift(1 + *cap as i64));
        }
        let z = &(&a * &a * a.clone()).shift(caps_sum) / &prod;
        let pre = pre.clone();
        Box::new(move |m: usize| {
            let m = m as i64;
            let mut t = Term::new(&qv);
            t.scalar(&pre()?);
            ratio_at(&mut t, &num, &den, m)?;
            t.sign(m).qpow(-3 * m * (m - 1) / 2)?.power(&z, m)?;
            t.value("gamma")
        }) as Eval<'static, usize>
    };
    let lhs = {
        let qv = qv.clone();
        let deltas = choice.delta.clone();
        let caps: Vec<usize> = pairs.iter().map(|p| p.2).collect();
        Box::new(move |_: ()| {
            let mut sum = Rational::zero();
            let mut err = None;
            crate::bailey::for_each_index(&caps, |idx| {
                if err.is_some() {
                    return;
                }
                let term = (|| -> Result<Rational> {
                    let mut v = beta_closed(idx)?;
                    for (d, &n) in deltas.iter().zip(idx) {
                        v *= d.eval(n as i64, &qv)?;
                    }
                    Ok(v)
                })();
                match term {
                    Ok(v) => sum += v,
                    Err(e) => err = Some(e),
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(sum),
            }
        }) as Eval<'static, ()>
    };
    let rhs = {
        let qv = qv.clone();
        let mut tail = Vec::new();
        for (b, c, _) in &pairs {
            tail.extend([b.clone(), c.clone()]);
        }
        for (_, _, cap) in &pairs {
            tail.push(qp(-(*cap as i64)));
        }
        let z = &(&(&a * &a) * &(&a * &a)).shift(caps_sum + 4) / &prod;
        let a = a.clone();
        Box::new(move |_: ()| Ok(pre()? * vwp(&a, tail.clone(), z.clone(), top, &qv)?)) as Eval<'static, ()>
    };
    Derivation { point, choice, beta, gamma, lhs, rhs }
}
