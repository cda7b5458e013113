//! Coefficient checks: product sides, multi-sum sides and theta series.

use crate::bailey::{multisum_series, Arity, LinearForm, MultiSumSpec, PairKind};
use crate::error::{Error, Result};
use crate::monomial::QMonomial;
use crate::series::TruncatedSeries;
use crate::theta::{
    alpha_sum_rhs, folded_theta_series, jtp_product_base, rr_rhs_series, theta_series, SpdtSpec, ThetaSpec,
};

/// One pair of series to compare.
#[derive(Debug, Clone)]
pub struct SeriesCase {
    pub label: String,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    /// Whether the left side should have nonnegative integer coefficients.
    pub positive: bool,
}

impl SeriesCase {
    fn new(label: impl Into<String>, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Self {
        SeriesCase { label: label.into(), lhs, rhs, positive: false }
    }

    fn positive(mut self) -> Self {
        self.positive = true;
        self
    }
}

pub type SeriesCheck = fn(usize, u32) -> Result<Vec<SeriesCase>>;

fn arity_of(kind: PairKind) -> Arity {
    if kind == PairKind::P57 {
        Arity::Triple
    } else {
        Arity::Double
    }
}

/// The `k`-fold limiting chain sum built on a seed pair:
///
/// `sum prod_j a^{n_j,1 + .. + n_j,k} q^{n_j,1^2 + .. + n_j,k^2} / prod (q)_{n_j,i+1 - n_j,i} * beta(n_1,1, n_2,1, ..)`
///
/// over `n_j,k >= .. >= n_j,1 >= 0`, which equals `(q)_inf^d` times the limit of the iterated beta.
pub fn family_lhs(kind: PairKind, k: usize, a: &QMonomial) -> Result<MultiSumSpec> {
    if k == 0 {
        return Err(Error::InvalidSpec("chain length must be at least 1".into()));
    }
    let d = arity_of(kind).indices();
    let dims = d * k;
    let at = |j: usize, i: usize| j * k + i;
    let mut spec = MultiSumSpec::new(dims);
    for j in 0..d {
        for i in 0..k {
            spec = spec.square(at(j, i));
        }
        for i in 0..k - 1 {
            spec = spec
                .nest(at(j, i + 1), at(j, i))
                .inv_poch(QMonomial::q(), LinearForm::diff(dims, at(j, i + 1), at(j, i)));
        }
    }
    let all: Vec<usize> = (0..dims).collect();
    spec = spec.monomial_power(a, LinearForm::sum(dims, &all))?;
    let first: Vec<usize> = (0..d).map(|j| at(j, 0)).collect();
    let aq = a.shift(1);
    for &f in &first {
        spec = spec.inv_poch(QMonomial::q(), LinearForm::index(dims, f));
    }
    match kind {
        PairKind::P47 | PairKind::P48 => {
            spec = spec.inv_poch(aq, LinearForm::sum(dims, &first));
            if kind == PairKind::P48 {
                spec = spec.cross(first[0], first[1]);
            }
        }
        PairKind::P57 => {
            spec = spec.poch(aq.clone(), LinearForm::sum(dims, &first));
            for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                spec = spec.inv_poch(aq.clone(), LinearForm::sum(dims, &[first[x], first[y]]));
            }
        }
        PairKind::Unit => return Err(Error::InvalidSpec("the unit pair has no limiting chain sum".into())),
    }
    Ok(spec)
}

fn weight(kind: PairKind) -> crate::bailey::AlphaWeight {
    kind.alpha_weight().expect("seed pairs have an alpha weight")
}

/// Product side of a family member.
pub fn family_rhs(base: &str, k: u32) -> Result<SpdtSpec> {
    let k = k as usize;
    match base {
        "FAM-4.17" => SpdtSpec::new(4 * k + 3, &[0, 2 * k + 1], 1, 1),
        "FAM-4.18" => SpdtSpec::new(4 * k + 3, &[0, 1], 1, 2),
        "FAM-4.19" => SpdtSpec::new(4 * k + 1, &[0, 2 * k], 1, 1),
        "FAM-4.20" => SpdtSpec::new(4 * k + 1, &[0, 1], 1, 2),
        "FAM-5.13" => SpdtSpec::new(6 * k + 3, &[0, 3 * k + 1], 2, 1),
        "FAM-5.14" => SpdtSpec::new(6 * k + 3, &[0, 1], 2, 2),
        _ => Err(Error::UnknownIdentity(base.to_string())),
    }
}

fn family_seed(base: &str) -> (PairKind, QMonomial) {
    match base {
        "FAM-4.17" => (PairKind::P47, QMonomial::one()),
        "FAM-4.18" => (PairKind::P47, QMonomial::q()),
        "FAM-4.19" => (PairKind::P48, QMonomial::one()),
        "FAM-4.20" => (PairKind::P48, QMonomial::q()),
        "FAM-5.13" => (PairKind::P57, QMonomial::one()),
        _ => (PairKind::P57, QMonomial::q()),
    }
}

fn family_case(base: &str, order: usize, k: u32) -> Result<Vec<SeriesCase>> {
    let (kind, a) = family_seed(base);
    let lhs = multisum_series(&family_lhs(kind, k as usize, &a)?, order)?;
    let rhs = rr_rhs_series(&family_rhs(base, k)?, order)?;
    Ok(vec![SeriesCase::new(format!("k={k}"), lhs, rhs).positive()])
}

macro_rules! family_checks {
    ($($name:ident => $id:expr;)*) => {
        $(
            pub fn $name(order: usize, k: u32) -> Result<Vec<SeriesCase>> {
                family_case($id, order, k)
            }
        )*
    };
}

family_checks! {
    fam417 => "FAM-4.17";
    fam418 => "FAM-4.18";
    fam419 => "FAM-4.19";
    fam420 => "FAM-4.20";
    fam513 => "FAM-5.13";
    fam514 => "FAM-5.14";
}

fn sample_as() -> Vec<(&'static str, QMonomial)> {
    vec![("a=1", QMonomial::one()), ("a=q", QMonomial::q()), ("a=2/3", QMonomial::from_ratio(2, 3))]
}

fn general_family(kinds: &[PairKind], order: usize, k: u32) -> Result<Vec<SeriesCase>> {
    let mut out = Vec::new();
    for &kind in kinds {
        let arity = arity_of(kind);
        let w = weight(kind).iterate(arity, k as usize);
        for (name, a) in sample_as() {
            let lhs = multisum_series(&family_lhs(kind, k as usize, &a)?, order)?;
            let rhs = alpha_sum_rhs(&w, &a, arity.indices() as u32, order)?;
            out.push(SeriesCase::new(format!("{} k={k} {name}", kind.id()), lhs, rhs));
        }
    }
    Ok(out)
}

pub fn fam416(order: usize, k: u32) -> Result<Vec<SeriesCase>> {
    general_family(&[PairKind::P47, PairKind::P48], order, k)
}

pub fn fam512(order: usize, k: u32) -> Result<Vec<SeriesCase>> {
    general_family(&[PairKind::P57], order, k)
}

fn limit_case(kind: PairKind, order: usize) -> Result<Vec<SeriesCase>> {
    let arity = arity_of(kind);
    let w = weight(kind).limit_step(arity);
    let mut as_ = sample_as();
    as_.insert(2, ("a=q^2", QMonomial::q_pow(2)));
    as_.into_iter()
        .map(|(name, a)| {
            let lhs = multisum_series(&family_lhs(kind, 1, &a)?, order)?;
            let rhs = alpha_sum_rhs(&w, &a, arity.indices() as u32, order)?;
            Ok(SeriesCase::new(name, lhs, rhs))
        })
        .collect()
}

pub fn lim49(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    limit_case(PairKind::P47, order)
}

pub fn lim410(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    limit_case(PairKind::P48, order)
}

pub fn lim58(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    limit_case(PairKind::P57, order)
}

fn q_base(shifted: bool) -> QMonomial {
    if shifted {
        QMonomial::q_pow(2)
    } else {
        QMonomial::q()
    }
}

/// `sum q^{n^2 + l^2 [+ nl] [+ n + l]} / ((q)_n (q)_l (q^{1|2})_{n+l})`.
fn rr_double(cross: bool, shifted: bool) -> MultiSumSpec {
    let mut s = MultiSumSpec::new(2)
        .square(0)
        .square(1)
        .inv_poch(QMonomial::q(), LinearForm::index(2, 0))
        .inv_poch(QMonomial::q(), LinearForm::index(2, 1))
        .inv_poch(q_base(shifted), LinearForm::sum(2, &[0, 1]));
    if cross {
        s = s.cross(0, 1);
    }
    if shifted {
        s = s.linear(0, 1).linear(1, 1);
    }
    s
}

/// `sum q^{n^2 + l^2 + k^2 [+ n + l + k]} (x)_{n+l+k} / ((q)_n (q)_l (q)_k (x)_{n+l} (x)_{n+k} (x)_{l+k})`.
fn rr_triple(shifted: bool) -> MultiSumSpec {
    let x = q_base(shifted);
    let mut s = MultiSumSpec::new(3).poch(x.clone(), LinearForm::sum(3, &[0, 1, 2]));
    for i in 0..3 {
        s = s.square(i).inv_poch(QMonomial::q(), LinearForm::index(3, i));
        if shifted {
            s = s.linear(i, 1);
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        s = s.inv_poch(x.clone(), LinearForm::sum(3, &[i, j]));
    }
    s
}

fn rr_case(lhs: MultiSumSpec, rhs: Result<SpdtSpec>, order: usize) -> Result<Vec<SeriesCase>> {
    Ok(vec![SeriesCase::new("series", multisum_series(&lhs, order)?, rr_rhs_series(&rhs?, order)?).positive()])
}

pub fn rr411(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    rr_case(rr_double(false, false), SpdtSpec::new(7, &[0, 3], 1, 1), order)
}

pub fn rr412(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    rr_case(rr_double(false, true), SpdtSpec::new(7, &[0, 1], 1, 2), order)
}

pub fn rr413(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    rr_case(rr_double(true, false), SpdtSpec::new(5, &[0, 2], 1, 1), order)
}

pub fn rr414(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    rr_case(rr_double(true, true), SpdtSpec::new(5, &[0, 1], 1, 2), order)
}

pub fn rr59(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    rr_case(rr_triple(false), SpdtSpec::new(9, &[0, 4], 2, 1), order)
}

pub fn rr510(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    rr_case(rr_triple(true), SpdtSpec::new(9, &[0, 1], 2, 2), order)
}

/// Every theta shape the catalog relies on.
pub fn catalog_theta_shapes() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in [5i64, 7, 9, 11, 15] {
        for b in [1, -1, a - 2, 2 - a] {
            if !out.contains(&(a, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn jtp(order: usize, _: u32) -> Result<Vec<SeriesCase>> {
    let mut out = Vec::new();
    for (a, b) in catalog_theta_shapes() {
        let spec = ThetaSpec::new(a, b)?;
        let theta = theta_series(&spec, order);
        let product = jtp_product_base(&spec.jtp_argument(), a as usize, order)?;
        out.push(SeriesCase::new(format!("A={a} B={b}"), theta.clone(), product));
        if b == -1 {
            out.push(SeriesCase::new(format!("A={a} folded"), folded_theta_series(&spec, order), theta));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn first_rr_coefficients() {
        let c = &rr411(4, 1).unwrap()[0];
        assert_eq!(c.lhs, c.rhs);
        assert_eq!(c.lhs.coeffs(), [1, 2, 5, 9, 17].map(int).as_slice());
        let c = &rr413(2, 1).unwrap()[0];
        assert_eq!(c.lhs.coeffs(), [1, 2, 4].map(int).as_slice());
    }

    #[test]
    fn family_k1_matches_direct_sum() {
        let f = &fam417(20, 1).unwrap()[0];
        let r = &rr411(20, 1).unwrap()[0];
        assert_eq!(f.lhs, r.lhs);
        assert_eq!(f.rhs, r.rhs);
    }

    #[test]
    fn family_second_member() {
        for c in fam419(25, 2).unwrap() {
            assert_eq!(c.lhs, c.rhs);
        }
        assert_eq!(family_rhs("FAM-4.19", 2).unwrap().modulus, 9);
    }

    #[test]
    fn limits_hold() {
        for c in lim49(15, 1).unwrap().into_iter().chain(lim410(15, 1).unwrap()) {
            assert_eq!(c.lhs, c.rhs, "{}", c.label);
        }
    }

    #[test]
    fn unit_pair_has_no_chain_sum() {
        assert!(family_lhs(PairKind::Unit, 1, &QMonomial::one()).is_err());
        assert!(family_lhs(PairKind::P47, 0, &QMonomial::one()).is_err());
    }
}
