//! Terminating basic hypergeometric series and the summation theorems used by
//! the derivations: q-Pfaff-Saalschutz, the terminating 6W5 sum and Jackson's
//! 8W7 sum.
//!
//! The very-well-poised kernel `(q sqrt a, -q sqrt a)_n / (sqrt a, -sqrt a)_n`
//! is always carried in its collapsed form `(1 - a q^{2n}) / (1 - a)`.

use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::qpoch::Term;
use crate::rational::Rational;
use num_traits::Zero;

/// `r phi s (numerators; denominators; q, z)` cut off at `termination_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSpec {
    pub numerator_params: Vec<QMonomial>,
    pub denominator_params: Vec<QMonomial>,
    pub argument: QMonomial,
    pub termination_index: usize,
}

impl PhiSpec {
    /// Rejects specs without a `q^{-M}` numerator matching the termination index.
    pub fn new(
        numerator_params: Vec<QMonomial>,
        denominator_params: Vec<QMonomial>,
        argument: QMonomial,
        termination_index: usize,
    ) -> Result<Self> {
        let stop = QMonomial::q_pow(-(termination_index as i64));
        if !numerator_params.contains(&stop) {
            return Err(Error::InvalidSpec(format!(
                "no numerator parameter q^-{termination_index} terminates the series"
            )));
        }
        Ok(PhiSpec { numerator_params, denominator_params, argument, termination_index })
    }
}

/// `r+1 W r (a; tail; q, z)` cut off at `termination_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VwpSpec {
    pub a: QMonomial,
    pub tail_params: Vec<QMonomial>,
    pub argument: QMonomial,
    pub termination_index: usize,
}

impl VwpSpec {
    pub fn new(a: QMonomial, tail_params: Vec<QMonomial>, argument: QMonomial, termination_index: usize) -> Result<Self> {
        let stop = QMonomial::q_pow(-(termination_index as i64));
        if !tail_params.contains(&stop) {
            return Err(Error::InvalidSpec(format!(
                "no tail parameter q^-{termination_index} terminates the series"
            )));
        }
        Ok(VwpSpec { a, tail_params, argument, termination_index })
    }
}

pub fn phi_eval(spec: &PhiSpec, qv: &Rational) -> Result<Rational> {
    let r = spec.numerator_params.len() as i64;
    let s = spec.denominator_params.len() as i64;
    let excess = 1 + s - r;
    let mut sum = Rational::zero();
    for n in 0..=spec.termination_index as i64 {
        let mut t = Term::new(qv);
        t.pochs(&spec.numerator_params, n)?
            .inv_pochs(&spec.denominator_params, n)?
            .inv_poch(&QMonomial::q(), n)?
            .power(&spec.argument, n)?;
        if excess != 0 {
            t.sign(excess * n).qpow(excess * n * (n - 1) / 2)?;
        }
        sum += t.value("phi series denominator")?;
    }
    Ok(sum)
}

pub fn vwp_eval(spec: &VwpSpec, qv: &Rational) -> Result<Rational> {
    let a = &spec.a;
    let partners: Vec<QMonomial> = spec.tail_params.iter().map(|b| &a.shift(1) / b).collect();
    let mut sum = Rational::zero();
    for n in 0..=spec.termination_index as i64 {
        let mut t = Term::new(qv);
        t.kernel(a, n)?
            .poch(a, n)?
            .pochs(&spec.tail_params, n)?
            .inv_poch(&QMonomial::q(), n)?
            .inv_pochs(&partners, n)?
            .power(&spec.argument, n)?;
        sum += t.value("very-well-poised denominator")?;
    }
    Ok(sum)
}

/// `3phi2(a, b, q^-M; c, ab q^{1-M}/c; q, q) = (c/a, c/b)_M / (c, c/(ab))_M`.
pub fn saalschutz_closed_form(a: &QMonomial, b: &QMonomial, m: usize, qv: &Rational, c: &QMonomial) -> Result<Rational> {
    let m = m as i64;
    let mut t = Term::new(qv);
    t.pochs(&[c / a, c / b], m)?.inv_pochs(&[c.clone(), &(c / a) / b], m)?;
    t.value("Saalschutz product")
}

/// The balanced `3phi2` whose value [`saalschutz_closed_form`] gives.
pub fn saalschutz_spec(a: &QMonomial, b: &QMonomial, m: usize, c: &QMonomial) -> PhiSpec {
    let stop = QMonomial::q_pow(-(m as i64));
    let fifth = &(a * b).shift(1 - m as i64) / c;
    PhiSpec::new(vec![a.clone(), b.clone(), stop], vec![c.clone(), fifth], QMonomial::q(), m)
        .expect("termination parameter present")
}

/// `6W5(a; b, c, q^-M; q, a q^{M+1}/(bc)) = (aq, aq/(bc))_M / (aq/b, aq/c)_M`.
pub fn sixphi5_closed_form(a: &QMonomial, b: &QMonomial, c: &QMonomial, m: usize, qv: &Rational) -> Result<Rational> {
    let m = m as i64;
    let aq = a.shift(1);
    let mut t = Term::new(qv);
    t.pochs(&[aq.clone(), &(&aq / b) / c], m)?.inv_pochs(&[&aq / b, &aq / c], m)?;
    t.value("6W5 product")
}

pub fn sixphi5_spec(a: &QMonomial, b: &QMonomial, c: &QMonomial, m: usize) -> VwpSpec {
    let stop = QMonomial::q_pow(-(m as i64));
    let z = &(&a.shift(m as i64 + 1) / b) / c;
    VwpSpec::new(a.clone(), vec![b.clone(), c.clone(), stop], z, m).expect("termination parameter present")
}

/// Jackson's sum: `8W7(a; b, c, d, a^2 q^{M+1}/(bcd), q^-M; q, q)` equals
/// `(aq, aq/(bc), aq/(bd), aq/(cd))_M / (aq/b, aq/c, aq/d, aq/(bcd))_M`.
pub fn jackson_8phi7_closed_form(
    a: &QMonomial,
    b: &QMonomial,
    c: &QMonomial,
    d: &QMonomial,
    m: usize,
    qv: &Rational,
) -> Result<Rational> {
    let m = m as i64;
    let aq = a.shift(1);
    let mut t = Term::new(qv);
    t.pochs(&[aq.clone(), &aq / &(b * c), &aq / &(b * d), &aq / &(c * d)], m)?
        .inv_pochs(&[&aq / b, &aq / c, &aq / d, &aq / &(&(b * c) * d)], m)?;
    t.value("Jackson product")
}

pub fn jackson_8phi7_spec(a: &QMonomial, b: &QMonomial, c: &QMonomial, d: &QMonomial, m: usize) -> VwpSpec {
    let stop = QMonomial::q_pow(-(m as i64));
    let e = &(a * a).shift(m as i64 + 1) / &(&(b * c) * d);
    VwpSpec::new(a.clone(), vec![b.clone(), c.clone(), d.clone(), e, stop], QMonomial::q(), m)
        .expect("termination parameter present")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(n: i64, d: i64) -> QMonomial {
        QMonomial::from_ratio(n, d)
    }

    #[test]
    fn single_term_series() {
        let qv = rat(1, 2);
        let spec = PhiSpec::new(vec![m(2, 1), QMonomial::one()], vec![m(3, 1)], m(1, 5), 0).unwrap();
        assert_eq!(phi_eval(&spec, &qv).unwrap(), int(1));
        let w = VwpSpec::new(m(3, 7), vec![m(2, 1), QMonomial::one()], m(1, 5), 0).unwrap();
        assert_eq!(vwp_eval(&w, &qv).unwrap(), int(1));
    }

    #[test]
    fn two_term_2phi1() {
        let qv = rat(1, 2);
        let spec = PhiSpec::new(vec![QMonomial::q_pow(-1), m(2, 1)], vec![m(3, 1)], m(1, 5), 1).unwrap();
        let qinv = int(2);
        let expected = int(1)
            + (int(1) - qinv) * (int(1) - int(2)) * rat(1, 5) / ((int(1) - rat(1, 2)) * (int(1) - int(3)));
        assert_eq!(phi_eval(&spec, &qv).unwrap(), expected);
    }

    #[test]
    fn missing_termination_is_rejected() {
        assert!(PhiSpec::new(vec![m(2, 1)], vec![m(3, 1)], m(1, 5), 2).is_err());
        assert!(VwpSpec::new(m(2, 1), vec![m(3, 1)], m(1, 5), 1).is_err());
    }

    #[test]
    fn closed_forms_at_zero_length() {
        let qv = rat(1, 3);
        assert_eq!(saalschutz_closed_form(&m(2, 3), &m(5, 7), 0, &qv, &m(-4, 9)).unwrap(), int(1));
        assert_eq!(sixphi5_closed_form(&m(2, 3), &m(5, 7), &m(3, 2), 0, &qv).unwrap(), int(1));
        assert_eq!(jackson_8phi7_closed_form(&m(2, 3), &m(5, 7), &m(3, 2), &m(-1, 4), 0, &qv).unwrap(), int(1));
    }

    #[test]
    fn saalschutz_matches_direct_sum() {
        let qv = rat(1, 3);
        let (a, b, c) = (m(2, 5), m(-3, 4), m(7, 2));
        for n in 0..6 {
            let direct = phi_eval(&saalschutz_spec(&a, &b, n, &c), &qv).unwrap();
            assert_eq!(direct, saalschutz_closed_form(&a, &b, n, &qv, &c).unwrap());
        }
    }

    #[test]
    fn sixphi5_and_jackson_match_direct_sums() {
        let qv = rat(-2, 5);
        let (a, b, c, d) = (m(3, 7), m(-5, 2), m(4, 9), m(8, 3));
        for n in 0..6 {
            assert_eq!(
                vwp_eval(&sixphi5_spec(&a, &b, &c, n), &qv).unwrap(),
                sixphi5_closed_form(&a, &b, &c, n, &qv).unwrap()
            );
            assert_eq!(
                vwp_eval(&jackson_8phi7_spec(&a, &b, &c, &d, n), &qv).unwrap(),
                jackson_8phi7_closed_form(&a, &b, &c, &d, n, &qv).unwrap()
            );
        }
    }

    #[test]
    fn kernel_singularity_surfaces() {
        let w = VwpSpec::new(QMonomial::one(), vec![QMonomial::q_pow(-1)], m(1, 2), 1).unwrap();
        assert_eq!(vwp_eval(&w, &rat(1, 3)), Err(Error::KernelSingularity));
    }
}
