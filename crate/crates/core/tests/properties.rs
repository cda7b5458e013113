use bailey_core::bailey::{multisum_series, reorder_double, reorder_triple, LinearForm, MultiSumSpec};
use bailey_core::hypergeom::{phi_eval, vwp_eval, PhiSpec, VwpSpec};
use bailey_core::qpoch::{poch, qpoch_series, PochSpec};
use bailey_core::rational::rat;
use bailey_core::{QMonomial, Rational, TruncatedSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;

const ORDER: usize = 12;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

/// A rational avoiding `0` and `+-1`, like the catalog's sample points.
fn point_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("degenerate", |r| !r.is_zero() && *r != Rational::one() && *r != -Rational::one())
}

fn monomial() -> impl Strategy<Value = QMonomial> {
    (point_rational(), -1i64..=1).prop_map(|(c, e)| QMonomial::new(c, e))
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rational(), ORDER + 1).prop_map(|c| TruncatedSeries::from_coeffs(c, ORDER))
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (series(), point_rational()).prop_map(|(s, c)| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = c;
        TruncatedSeries::from_coeffs(coeffs, ORDER)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, TruncatedSeries::zero(ORDER));
        prop_assert_eq!(&a * &TruncatedSeries::one(ORDER), a.clone());
    }

    #[test]
    fn reciprocal_inverts(a in unit_series()) {
        let r = a.recip().unwrap();
        prop_assert_eq!(&a * &r, TruncatedSeries::one(ORDER));
    }

    #[test]
    fn product_splits_at_any_length(c in point_rational(), e in 0i64..3, m in 0usize..6, n in 0usize..6) {
        let x = QMonomial::new(c, e);
        let whole = qpoch_series(&PochSpec::finite(x.clone(), m + n), ORDER).unwrap();
        let head = qpoch_series(&PochSpec::finite(x.clone(), m), ORDER).unwrap();
        let tail = qpoch_series(&PochSpec::finite(x.shift(m as i64), n), ORDER).unwrap();
        prop_assert_eq!(whole, &head * &tail);
    }

    /// A finite product is a polynomial, so its full expansion evaluated at a
    /// rational point must reproduce the exact point value.
    #[test]
    fn engines_agree_on_polynomials(c in point_rational(), e in 0i64..3, n in 0usize..6, qv in point_rational()) {
        let x = QMonomial::new(c, e);
        let degree = (e as usize + n) * n + 1;
        let s = qpoch_series(&PochSpec::finite(x.clone(), n), degree).unwrap();
        prop_assert_eq!(s.eval_polynomial(&qv), poch(&x, n as i64, &qv).unwrap());
    }

    #[test]
    fn phi_ignores_parameter_order(a in monomial(), b in monomial(), c in monomial(), d in monomial(),
                                   m in 0usize..5, qv in point_rational()) {
        let stop = QMonomial::q_pow(-(m as i64));
        let one = PhiSpec::new(vec![a.clone(), b.clone(), stop.clone()], vec![c.clone(), d.clone()], QMonomial::q(), m).unwrap();
        let two = PhiSpec::new(vec![stop, b, a], vec![d, c], QMonomial::q(), m).unwrap();
        match (phi_eval(&one, &qv), phi_eval(&two, &qv)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }

    /// The very-well-poised form is the general series with the kernel pairs
    /// written out as `(qa^{1/2}, -qa^{1/2})_n/(a^{1/2}, -a^{1/2})_n = (q^2 a; q^2)_n/(a; q^2)_n`,
    /// which for a square `a = s^2` can be listed as ordinary parameters.
    #[test]
    fn vwp_matches_phi(s in point_rational(), b in monomial(), c in monomial(), m in 0usize..5, qv in point_rational()) {
        let sm = QMonomial::constant(s);
        let a = &sm * &sm;
        let stop = QMonomial::q_pow(-(m as i64));
        let aq = a.shift(1);
        let z = &(&a.shift(m as i64 + 1) / &b) / &c;
        let vwp = VwpSpec::new(a.clone(), vec![b.clone(), c.clone(), stop.clone()], z.clone(), m).unwrap();
        let phi = PhiSpec::new(
            vec![a.clone(), sm.shift(1), (-sm.clone()).shift(1), b.clone(), c.clone(), stop.clone()],
            vec![sm.clone(), -sm.clone(), &aq / &b, &aq / &c, &aq / &stop],
            z,
            m,
        ).unwrap();
        if let (Ok(x), Ok(y)) = (vwp_eval(&vwp, &qv), phi_eval(&phi, &qv)) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn reordering_double_sums(vals in prop::collection::vec(small_rational(), 27)) {
        let (l, r) = reorder_double(3, |m, n, k| vals[9 * m + 3 * n + k].clone());
        prop_assert_eq!(l, r);
    }

    #[test]
    fn reordering_triple_sums(vals in prop::collection::vec(small_rational(), 16)) {
        let (l, r) = reorder_triple(2, |m, n, k, j| vals[8 * m + 4 * n + 2 * k + j].clone());
        prop_assert_eq!(l, r);
    }

    /// Relabelling the summation indices of a multiple sum leaves its expansion unchanged.
    #[test]
    fn multisum_index_relabelling(cross in 0i64..2, lin0 in 0i64..3, lin1 in 0i64..3, c in point_rational()) {
        let build = |x: usize, y: usize| {
            let mut s = MultiSumSpec::new(2).square(0).square(1)
                .linear(x, lin0).linear(y, lin1)
                .inv_poch(QMonomial::q(), LinearForm::index(2, x))
                .inv_poch(QMonomial::new(c.clone(), 1), LinearForm::sum(2, &[0, 1]))
                .poch(QMonomial::new(c.clone(), 2), LinearForm::index(2, y));
            if cross == 1 {
                s = s.cross(0, 1);
            }
            s
        };
        prop_assert_eq!(multisum_series(&build(0, 1), 16).unwrap(), multisum_series(&build(1, 0), 16).unwrap());
    }
}
