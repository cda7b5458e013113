//! Bailey type transforms in two and three indices, the first and second
//! Bailey type lemmas, pairs, chains and the multi-sum series evaluator.

mod multisum;
mod pair;
mod seq;
mod transform;

pub use multisum::{multisum_series, LinearForm, MultiSumSpec, PochFactor};
pub use pair::{
    chain_iterate, fbtl_step, sbtl_step, verify_pair, w_weight_series, w_weight_value, AlphaWeight, BaileyPair,
    BetaTable, LemmaForm, LemmaStep, PairKind, PairMismatch,
};
pub use seq::SeqSpec;
pub use transform::{
    beta_from_alpha, check_transform, for_each_index, gamma_from_delta, reorder_double, reorder_triple, TransformChoice,
    TransformSides,
};

use crate::monomial::QMonomial;
use crate::rational::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// Number of summation indices of a transform or pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arity {
    Double,
    Triple,
}

impl Arity {
    pub fn indices(self) -> usize {
        match self {
            Arity::Double => 2,
            Arity::Triple => 3,
        }
    }
}

/// Free parameter symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    A,
    B,
    C,
    B1,
    C1,
    B2,
    C2,
    D,
    BigA,
    BigB,
}

impl Param {
    pub const ALL: [Param; 10] = [
        Param::A,
        Param::B,
        Param::C,
        Param::B1,
        Param::C1,
        Param::B2,
        Param::C2,
        Param::D,
        Param::BigA,
        Param::BigB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
            Param::B1 => "b'",
            Param::C1 => "c'",
            Param::B2 => "b''",
            Param::C2 => "c''",
            Param::D => "d",
            Param::BigA => "A",
            Param::BigB => "B",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sample point: parameter values, termination indices and the value of `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    pub params: BTreeMap<Param, QMonomial>,
    pub caps: Vec<usize>,
    pub qv: Rational,
}

impl ParamPoint {
    pub fn new(qv: Rational) -> Self {
        ParamPoint { params: BTreeMap::new(), caps: Vec::new(), qv }
    }

    pub fn with(mut self, p: Param, v: QMonomial) -> Self {
        self.params.insert(p, v);
        self
    }

    pub fn with_caps(mut self, caps: &[usize]) -> Self {
        self.caps = caps.to_vec();
        self
    }

    /// Panics if `p` was never set; points are built by the catalog, which
    /// always sets every parameter an identity mentions.
    pub fn get(&self, p: Param) -> &QMonomial {
        self.params
            .get(&p)
            .unwrap_or_else(|| panic!("parameter {p} missing from sample point"))
    }

    pub fn cap(&self, i: usize) -> usize {
        self.caps[i]
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !self.caps.is_empty() {
            parts.push(format!("caps={:?}", self.caps));
        }
        parts.push(format!("q={}", crate::rational::format_rational(&self.qv)));
        parts.join(" ")
    }
}
