//! Exact checks at random rational points.

use super::sampling::Sampler;
use super::terminating::derivation;
use crate::bailey::{
    beta_from_alpha, check_transform, fbtl_step, for_each_index, gamma_from_delta, sbtl_step, verify_pair, Arity,
    BaileyPair, LemmaStep, PairKind, Param, ParamPoint, SeqSpec, TransformChoice,
};
use crate::error::Result;
use crate::hypergeom::{
    jackson_8phi7_closed_form, jackson_8phi7_spec, phi_eval, saalschutz_closed_form, saalschutz_spec,
    sixphi5_closed_form, sixphi5_spec, vwp_eval,
};
use crate::monomial::QMonomial;
use crate::qpoch::Term;
use crate::rational::{format_rational, Rational};
use num_traits::Zero;

/// The result of one trial: where it was taken and the first disagreement, if any.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub point: String,
    pub mismatch: Option<(String, Rational, Rational)>,
}

impl Outcome {
    fn new(point: String) -> Self {
        Outcome { point, mismatch: None }
    }

    fn compare(&mut self, label: impl FnOnce() -> String, lhs: Rational, rhs: Rational) {
        if self.mismatch.is_none() && lhs != rhs {
            self.mismatch = Some((label(), lhs, rhs));
        }
    }
}

pub type PointCheck = fn(&mut Sampler, u32, u64) -> Result<Outcome>;

fn fmt_idx(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub fn eq_identity(which: usize, s: &mut Sampler) -> Result<Outcome> {
    let d = derivation(which, s);
    let mut out = Outcome::new(d.point.describe());
    out.compare(|| "identity".into(), (d.lhs)(())?, (d.rhs)(())?);
    Ok(out)
}

pub fn deriv_beta(which: usize, s: &mut Sampler) -> Result<Outcome> {
    let d = derivation(which, s);
    let mut out = Outcome::new(d.point.describe());
    let caps = vec![s.max_cap(); d.choice.arity.indices()];
    let mut err = None;
    for_each_index(&caps, |idx| {
        if err.is_some() || out.mismatch.is_some() {
            return;
        }
        let pair = beta_from_alpha(&d.choice, idx, &d.point.qv).and_then(|x| Ok((x, (d.beta)(idx.to_vec())?)));
        match pair {
            Ok((direct, closed)) => out.compare(|| format!("beta({})", fmt_idx(idx)), direct, closed),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

pub fn deriv_gamma(which: usize, s: &mut Sampler) -> Result<Outcome> {
    let d = derivation(which, s);
    let mut out = Outcome::new(d.point.describe());
    let top = *d.choice.bounds.iter().min().expect("bounds");
    for m in 0..=top + 1 {
        let direct = gamma_from_delta(&d.choice, m, &d.point.qv)?;
        let closed = if m > top { Rational::zero() } else { (d.gamma)(m)? };
        out.compare(|| format!("gamma({m})"), direct, closed);
    }
    Ok(out)
}

/// The first lemma's transform choice, with the alpha of the first seed pair.
fn lemma_choice(arity: Arity, s: &mut Sampler) -> (ParamPoint, TransformChoice) {
    let names: &[Param] = match arity {
        Arity::Double => &[Param::A, Param::B, Param::C, Param::B1, Param::C1],
        Arity::Triple => &[Param::A, Param::B, Param::C, Param::B1, Param::C1, Param::B2, Param::C2],
    };
    let point = s.point(names, arity.indices());
    let a = point.get(Param::A).clone();
    let qa = a.shift(1);
    let delta = (0..arity.indices())
        .map(|i| {
            let b = point.get(names[1 + 2 * i]).clone();
            let c = point.get(names[2 + 2 * i]).clone();
            let qt = QMonomial::q_pow(-(point.cap(i) as i64));
            SeqSpec::new("delta")
                .num([b.clone(), c.clone(), qt.clone()])
                .den([&(&b * &c) * &qt / a.clone()])
                .ratio(QMonomial::q())
        })
        .collect();
    let choice = TransformChoice {
        arity,
        alpha: SeqSpec::new("alpha")
            .num([a.clone()])
            .kernel(a.clone())
            .den([QMonomial::q()])
            .ratio(-a.shift(1))
            .quad(3),
        delta,
        u: vec![SeqSpec::new("u").den([QMonomial::q()]); arity.indices()],
        v: vec![SeqSpec::new("v").den([qa]); arity.indices()],
        t: SeqSpec::unit(),
        w: SeqSpec::unit(),
        bounds: point.caps.clone(),
    };
    (point, choice)
}

fn transform_outcome(point: &ParamPoint, choice: &TransformChoice, label: &str) -> Result<Outcome> {
    let sides = check_transform(choice, &point.qv)?;
    let mut out = Outcome::new(format!("{label}: {}", point.describe()));
    out.compare(|| label.to_string(), sides.lhs, sides.rhs);
    Ok(out)
}

pub fn thm_double(s: &mut Sampler, _k: u32, trial: u64) -> Result<Outcome> {
    match trial % 5 {
        4 => {
            let (p, c) = lemma_choice(Arity::Double, s);
            transform_outcome(&p, &c, "first lemma choice")
        }
        r => {
            let d = derivation(r as usize + 1, s);
            transform_outcome(&d.point, &d.choice, &format!("choice {}", r + 1))
        }
    }
}

pub fn thm_triple(s: &mut Sampler, _k: u32, trial: u64) -> Result<Outcome> {
    if trial.is_multiple_of(2) {
        let d = derivation(5, s);
        transform_outcome(&d.point, &d.choice, "triple sum choice")
    } else {
        let (p, c) = lemma_choice(Arity::Triple, s);
        transform_outcome(&p, &c, "second lemma choice")
    }
}

fn seed_for(arity: Arity, trial: u64) -> BaileyPair {
    match (arity, trial % 3) {
        (Arity::Double, 0) => BaileyPair::unit(Arity::Double),
        (Arity::Double, 1) => BaileyPair::seed(PairKind::P47),
        (Arity::Double, _) => BaileyPair::seed(PairKind::P48),
        (Arity::Triple, 0) => BaileyPair::unit(Arity::Triple),
        (Arity::Triple, _) => BaileyPair::seed(PairKind::P57),
    }
}

fn step_params(s: &mut Sampler, arity: Arity) -> Vec<QMonomial> {
    (0..2 * arity.indices()).map(|_| s.monomial()).collect()
}

fn describe_step(point: &str, params: &[QMonomial]) -> String {
    let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    format!("{point} step=[{}]", ps.join(", "))
}

fn pair_outcome(pair: &BaileyPair, a: &QMonomial, qv: &Rational, cap: usize, point: String) -> Result<Outcome> {
    let mut out = Outcome::new(point);
    if let Some(m) = verify_pair(pair, a, qv, cap)? {
        out.mismatch = Some((format!("beta({})", fmt_idx(&m.index)), m.lhs, m.rhs));
    }
    Ok(out)
}

fn pair_check(kind: PairKind, s: &mut Sampler) -> Result<Outcome> {
    let pair = BaileyPair::seed(kind);
    let qv = s.rational();
    let a = s.monomial();
    let point = format!("{} a={a} q={}", pair.id, format_rational(&qv));
    pair_outcome(&pair, &a, &qv, s.max_cap(), point)
}

pub fn pair47(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
    pair_check(PairKind::P47, s)
}

pub fn pair48(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
    pair_check(PairKind::P48, s)
}

pub fn pair57(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
    pair_check(PairKind::P57, s)
}

fn step_check(arity: Arity, s: &mut Sampler, trial: u64) -> Result<Outcome> {
    let seed = seed_for(arity, trial);
    let qv = s.rational();
    let a = s.monomial();
    let params = step_params(s, arity);
    let step = LemmaStep::new(params.clone());
    let pair = match arity {
        Arity::Double => fbtl_step(&seed, step)?,
        Arity::Triple => sbtl_step(&seed, step)?,
    };
    let point = describe_step(&format!("{} a={a} q={}", seed.id, format_rational(&qv)), &params);
    pair_outcome(&pair, &a, &qv, s.max_cap(), point)
}

pub fn step_double(s: &mut Sampler, _: u32, trial: u64) -> Result<Outcome> {
    step_check(Arity::Double, s, trial)
}

pub fn step_triple(s: &mut Sampler, _: u32, trial: u64) -> Result<Outcome> {
    step_check(Arity::Triple, s, trial)
}

/// `(b,c)_n (aq/bc)_{T-n} (aq/bc)^n / ((aq/b, aq/c)_T (q)_{T-n})`.
fn lemma_factor(t: &mut Term<'_>, a: &QMonomial, b: &QMonomial, c: &QMonomial, big: i64, n: i64) -> Result<()> {
    let aq = a.shift(1);
    let r = &aq / &(b * c);
    t.pochs(&[b.clone(), c.clone()], n)?
        .poch(&r, big - n)?
        .power(&r, n)?
        .inv_pochs(&[&aq / b, &aq / c], big)?
        .inv_poch(&QMonomial::q(), big - n)?;
    Ok(())
}

/// Both sides of the key identity behind the lemmas, summed directly.
fn key_check(arity: Arity, s: &mut Sampler, trial: u64) -> Result<Outcome> {
    let seed = seed_for(arity, trial);
    let qv = s.rational();
    let a = s.monomial();
    let params = step_params(s, arity);
    let caps: Vec<usize> = (0..arity.indices()).map(|_| s.cap()).collect();
    let d = arity.indices();
    let cap = *caps.iter().max().expect("caps");
    let table = seed.beta_table(&a, cap, &qv)?;
    let mut lhs = Rational::zero();
    let mut err = None;
    for_each_index(&caps, |idx| {
        if err.is_some() {
            return;
        }
        let term = (|| -> Result<Rational> {
            let mut t = Term::new(&qv);
            for i in 0..d {
                lemma_factor(&mut t, &a, &params[2 * i], &params[2 * i + 1], caps[i] as i64, idx[i] as i64)?;
            }
            t.scalar(table.get(idx));
            t.value("key lhs")
        })();
        match term {
            Ok(v) => lhs += v,
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let aq = a.shift(1);
    let z = params.iter().fold(aq.pow(d as i64), |acc, b| &acc / b);
    let mut rhs = Rational::zero();
    for m in 0..=*caps.iter().min().expect("caps") {
        let mi = m as i64;
        let mut t = Term::new(&qv);
        t.scalar(&seed.alpha(&a, m, &qv)?);
        for b in &params {
            t.poch(b, mi)?.inv_poch(&(&aq / b), mi)?;
        }
        t.power(&z, mi)?;
        for &c in &caps {
            t.inv_poch(&QMonomial::q(), c as i64 - mi)?.inv_poch(&aq, c as i64 + mi)?;
        }
        rhs += t.value("key rhs")?;
    }
    let point = describe_step(
        &format!("{} a={a} q={} caps={caps:?}", seed.id, format_rational(&qv)),
        &params,
    );
    let mut out = Outcome::new(point);
    out.compare(|| "key identity".into(), lhs, rhs);
    Ok(out)
}

pub fn key_double(s: &mut Sampler, _: u32, trial: u64) -> Result<Outcome> {
    key_check(Arity::Double, s, trial)
}

pub fn key_triple(s: &mut Sampler, _: u32, trial: u64) -> Result<Outcome> {
    key_check(Arity::Triple, s, trial)
}

/// `sum_m alpha_m prod (b)_m/(aq/b)_m prod_j (q^-T_j)_m/(aq^{1+T_j})_m z^m q^{-d C(m,2)}`
/// over every step of the chain.
fn chain_alpha_side(
    seed: &BaileyPair,
    a: &QMonomial,
    qv: &Rational,
    steps: &[Vec<QMonomial>],
    caps: &[usize],
) -> Result<Rational> {
    let d = caps.len() as i64;
    let k = steps.len() as i64;
    let aq = a.shift(1);
    let mut z = a.pow(d * k).shift(d * k + caps.iter().sum::<usize>() as i64);
    for b in steps.iter().flatten() {
        z = &z / b;
    }
    let mut lhs = Rational::zero();
    for m in 0..=*caps.iter().min().expect("caps") {
        let mi = m as i64;
        let mut t = Term::new(qv);
        t.scalar(&seed.alpha(a, m, qv)?);
        for b in steps.iter().flatten() {
            t.poch(b, mi)?.inv_poch(&(&aq / b), mi)?;
        }
        for &c in caps {
            t.poch(&QMonomial::q_pow(-(c as i64)), mi)?.inv_poch(&a.shift(1 + c as i64), mi)?;
        }
        t.power(&z, mi)?.qpow(-d * mi * (mi - 1) / 2)?.sign(d * mi);
        lhs += t.value("chain lhs")?;
    }
    Ok(lhs)
}

/// The chain identity: the alpha side against the nested sum over
/// `T_j >= n_{j,k} >= .. >= n_{j,1}` in each of the `d` chains, and against
/// the beta of the iterated pair.
fn chain_check(arity: Arity, k: u32, s: &mut Sampler, trial: u64) -> Result<Outcome> {
    let seed = seed_for(arity, trial);
    let d = arity.indices();
    let k = k as usize;
    let qv = s.rational();
    let a = s.monomial();
    let steps: Vec<Vec<QMonomial>> = (0..k).map(|_| step_params(s, arity)).collect();
    let caps: Vec<usize> = (0..d).map(|_| s.cap()).collect();
    let aq = a.shift(1);
    let cap = *caps.iter().max().expect("caps");

    let lhs = chain_alpha_side(&seed, &a, &qv, &steps, &caps)?;

    let table = seed.beta_table(&a, cap, &qv)?;
    let chain_sums = (0..d)
        .map(|j| chain_weights(&a, &qv, &steps, j, caps[j]))
        .collect::<Result<Vec<_>>>()?;
    let mut nested = Rational::zero();
    for_each_index(&caps, |idx| {
        let mut v = table.get(idx).clone();
        for (j, &n1) in idx.iter().enumerate() {
            v *= &chain_sums[j][n1];
        }
        nested += v;
    });
    let mut pre = Term::new(&qv);
    for (j, &c) in caps.iter().enumerate() {
        let (b, cc) = (&steps[k - 1][2 * j], &steps[k - 1][2 * j + 1]);
        pre.pochs(&[aq.clone(), &aq / &(b * cc)], c as i64)?
            .inv_pochs(&[&aq / b, &aq / cc], c as i64)?;
    }
    let nested = nested * pre.value("chain prefactor")?;

    let steps_list: Vec<LemmaStep> = steps.iter().map(|st| LemmaStep::new(st.clone())).collect();
    let chained = crate::bailey::chain_iterate(&seed, &steps_list)?.beta_table(&a, cap, &qv)?;
    let mut scale = Term::new(&qv);
    for &c in &caps {
        scale.pochs(&[QMonomial::q(), aq.clone()], c as i64)?;
    }
    let iterated = scale.value("chain scale")? * chained.get(&caps);

    let flat: Vec<QMonomial> = steps.iter().flatten().cloned().collect();
    let point = describe_step(
        &format!("{} k={k} a={a} q={} caps={caps:?}", seed.id, format_rational(&qv)),
        &flat,
    );
    let mut out = Outcome::new(point);
    out.compare(|| "nested sum".into(), lhs.clone(), nested);
    out.compare(|| "iterated pair".into(), lhs, iterated);
    Ok(out)
}

/// For chain `j` with cap `T`: `out[n_1]` is the sum over `T >= n_k >= .. >= n_2 >= n_1`
/// of every factor that does not involve beta.
fn chain_weights(a: &QMonomial, qv: &Rational, steps: &[Vec<QMonomial>], j: usize, big: usize) -> Result<Vec<Rational>> {
    let k = steps.len();
    let aq = a.shift(1);
    let q = QMonomial::q();
    let bc = |i: usize| (&steps[i][2 * j], &steps[i][2 * j + 1]);
    let bi = big as i64;
    // level[n] = weight of the partial chain from the top down to index i, ending at n_i = n.
    let mut level = vec![Rational::zero(); big + 1];
    {
        let (b, c) = bc(k - 1);
        let qt = QMonomial::q_pow(-bi);
        for (n, slot) in level.iter_mut().enumerate() {
            let ni = n as i64;
            let mut t = Term::new(qv);
            t.pochs(&[b.clone(), c.clone()], ni)?
                .poch(&qt, ni)?
                .inv_poch(&(&(b * c) * &qt / a.clone()), ni)?
                .qpow(ni)?;
            *slot = t.value("chain top")?;
        }
    }
    for i in (0..k - 1).rev() {
        let (b, c) = bc(i);
        let mut next = vec![Rational::zero(); big + 1];
        for (lo, slot) in next.iter_mut().enumerate() {
            let li = lo as i64;
            let mut own = Term::new(qv);
            own.pochs(&[b.clone(), c.clone()], li)?
                .qpow(li)?
                .power(a, li)?
                .power(&(b * c), -li)?;
            let own = own.value("chain level")?;
            let mut acc = Rational::zero();
            for (hi, w) in level.iter().enumerate().skip(lo) {
                if w.is_zero() {
                    continue;
                }
                let hi = hi as i64;
                let mut t = Term::new(qv);
                t.inv_poch(&q, hi - li)?
                    .poch(&(&aq / &(b * c)), hi - li)?
                    .inv_pochs(&[&aq / b, &aq / c], hi)?;
                acc += t.value("chain link")? * w;
            }
            *slot = acc * own;
        }
        level = next;
    }
    Ok(level)
}

pub fn chain_double(s: &mut Sampler, k: u32, trial: u64) -> Result<Outcome> {
    chain_check(Arity::Double, k, s, trial)
}

pub fn chain_triple(s: &mut Sampler, k: u32, trial: u64) -> Result<Outcome> {
    chain_check(Arity::Triple, k, s, trial)
}

pub fn sum_saalschutz(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
    let qv = s.rational();
    let (a, b, c) = (s.monomial(), s.monomial(), s.monomial());
    let m = s.cap();
    let point = format!("a={a} b={b} c={c} M={m} q={}", format_rational(&qv));
    let mut out = Outcome::new(point);
    let direct = phi_eval(&saalschutz_spec(&a, &b, m, &c), &qv)?;
    out.compare(|| "closed form".into(), direct, saalschutz_closed_form(&a, &b, m, &qv, &c)?);
    Ok(out)
}

pub fn sum_6phi5(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
    let qv = s.rational();
    let (a, b, c) = (s.monomial(), s.monomial(), s.monomial());
    let m = s.cap();
    let point = format!("a={a} b={b} c={c} M={m} q={}", format_rational(&qv));
    let mut out = Outcome::new(point);
    let direct = vwp_eval(&sixphi5_spec(&a, &b, &c, m), &qv)?;
    out.compare(|| "closed form".into(), direct, sixphi5_closed_form(&a, &b, &c, m, &qv)?);
    Ok(out)
}

pub fn sum_8phi7(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
    let qv = s.rational();
    let (a, b, c, d) = (s.monomial(), s.monomial(), s.monomial(), s.monomial());
    let m = s.cap();
    let point = format!("a={a} b={b} c={c} d={d} M={m} q={}", format_rational(&qv));
    let mut out = Outcome::new(point);
    let direct = vwp_eval(&jackson_8phi7_spec(&a, &b, &c, &d, m), &qv)?;
    out.compare(|| "closed form".into(), direct, jackson_8phi7_closed_form(&a, &b, &c, &d, m, &qv)?);
    Ok(out)
}

macro_rules! terminating_checks {
    ($($eq:ident, $beta:ident, $gamma:ident => $n:expr;)*) => {
        $(
            pub fn $eq(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
                eq_identity($n, s)
            }
            pub fn $beta(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
                deriv_beta($n, s)
            }
            pub fn $gamma(s: &mut Sampler, _: u32, _: u64) -> Result<Outcome> {
                deriv_gamma($n, s)
            }
        )*
    };
}

terminating_checks! {
    eq1, beta1, gamma1 => 1;
    eq2, beta2, gamma2 => 2;
    eq3, beta3, gamma3 => 3;
    eq4, beta4, gamma4 => 4;
    eq5, beta5, gamma5 => 5;
}
