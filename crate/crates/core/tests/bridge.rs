//! Engine A against engine B on a terminating double sum with every parameter
//! a monomial in `q`.
//!
//! Each summand is a ratio of finite products. Expanding numerator and
//! denominator as power series to their full degree gives polynomials, so
//! substituting a rational `q` into the expansions is exact and must agree
//! with direct evaluation.

use bailey_core::hypergeom::{vwp_eval, VwpSpec};
use bailey_core::qpoch::{qpoch_series, PochSpec, Term};
use bailey_core::rational::{pow_i, rat};
use bailey_core::{QMonomial, Rational, TruncatedSeries};
use num_traits::{One, Zero};

/// A finite product `(x)_n` written as `scalar * q^shift * P(q)` with `P` a polynomial.
struct Expanded {
    scalar: Rational,
    shift: i64,
    poly: TruncatedSeries,
}

fn expand(x: &QMonomial, n: usize) -> Expanded {
    let mut scalar = Rational::one();
    let mut shift = 0;
    let mut factors = Vec::new();
    for j in 0..n as i64 {
        let e = x.qexp + j;
        if e >= 0 {
            factors.push(QMonomial::new(x.coeff.clone(), e));
        } else {
            // 1 - c q^e = -c q^e (1 - q^-e / c)
            scalar *= -x.coeff.clone();
            shift += e;
            factors.push(QMonomial::new(x.coeff.recip(), -e));
        }
    }
    let degree = factors.iter().map(|f| f.qexp as usize).sum();
    let mut poly = TruncatedSeries::one(degree);
    for f in factors {
        poly = &poly * &qpoch_series(&PochSpec::finite(f, 1), degree).unwrap();
    }
    Expanded { scalar, shift, poly }
}

/// Value at `qv` of `prod num (x)_n / prod den (y)_m` through the expansions.
fn through_series(num: &[(QMonomial, usize)], den: &[(QMonomial, usize)], qv: &Rational) -> Rational {
    let mut acc = Rational::one();
    for (x, n) in num {
        let e = expand(x, *n);
        acc *= e.scalar * pow_i(qv, e.shift).unwrap() * e.poly.eval_polynomial(qv);
    }
    for (y, m) in den {
        let e = expand(y, *m);
        acc /= e.scalar * pow_i(qv, e.shift).unwrap() * e.poly.eval_polynomial(qv);
    }
    acc
}

fn direct(num: &[(QMonomial, usize)], den: &[(QMonomial, usize)], qv: &Rational) -> Rational {
    let mut t = Term::new(qv);
    for (x, n) in num {
        t.poch(x, *n as i64).unwrap();
    }
    for (y, m) in den {
        t.inv_poch(y, *m as i64).unwrap();
    }
    t.value("summand").unwrap()
}

fn mono(n: i64, d: i64, e: i64) -> QMonomial {
    QMonomial::new(rat(n, d), e)
}

#[test]
fn double_sum_agrees_across_engines() {
    let (a, b, c, d) = (mono(2, 3, 1), mono(3, 1, 1), mono(-2, 1, 0), mono(5, 1, 1));
    let (b1, c1) = (mono(7, 2, 0), mono(-3, 1, 1));
    let (mm, nn) = (2usize, 3usize);
    let q = QMonomial::q();
    let qa = a.shift(1);
    let qad = &qa / &d;
    let qm = QMonomial::q_pow(-(mm as i64));
    let qn = QMonomial::q_pow(-(nn as i64));
    let ym = &(&(&b * &c) * &qm) / &a;
    let yn = &(&(&b1 * &c1) * &qn) / &a;

    for qv in [rat(2, 5), rat(-3, 7), rat(9, 4)] {
        let mut lhs = Rational::zero();
        for n in 0..=mm {
            for l in 0..=nn {
                let num = vec![
                    (qad.clone(), n + l),
                    (b.clone(), n),
                    (c.clone(), n),
                    (qm.clone(), n),
                    (b1.clone(), l),
                    (c1.clone(), l),
                    (qn.clone(), l),
                ];
                let den = vec![
                    (qa.clone(), n + l),
                    (qad.clone(), n),
                    (ym.clone(), n),
                    (q.clone(), n),
                    (qad.clone(), l),
                    (yn.clone(), l),
                    (q.clone(), l),
                ];
                let power = pow_i(&qv, (n + l) as i64).unwrap();
                let exact = direct(&num, &den, &qv) * &power;
                let bridged = through_series(&num, &den, &qv) * &power;
                assert_eq!(exact, bridged, "summand ({n}, {l}) at q = {qv}");
                lhs += bridged;
            }
        }

        let mut pre = Term::new(&qv);
        pre.pochs(&[&qa / &b, &qa / &c], mm as i64)
            .unwrap()
            .inv_pochs(&[qa.clone(), &qa / &(&b * &c)], mm as i64)
            .unwrap()
            .pochs(&[&qa / &b1, &qa / &c1], nn as i64)
            .unwrap()
            .inv_pochs(&[qa.clone(), &qa / &(&b1 * &c1)], nn as i64)
            .unwrap();
        let z = &(&(&a * &a) * &a).shift(3 + (mm + nn) as i64) / &(&(&(&b * &c) * &(&b1 * &c1)) * &d);
        let tail = vec![d.clone(), b.clone(), c.clone(), b1.clone(), c1.clone(), qm.clone(), qn.clone()];
        let rhs = pre.value("prefactor").unwrap() * vwp_eval(&VwpSpec::new(a.clone(), tail, z, mm).unwrap(), &qv).unwrap();
        assert_eq!(lhs, rhs, "q = {qv}");
    }
}

#[test]
fn expansion_handles_negative_exponents() {
    let qv = rat(3, 8);
    let x = mono(5, 2, -3);
    for n in 0..7 {
        assert_eq!(through_series(&[(x.clone(), n)], &[], &qv), direct(&[(x.clone(), n)], &[], &qv));
    }
}
