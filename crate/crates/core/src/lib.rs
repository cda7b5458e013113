//! Exact q-series machinery for Bailey type transforms in two and three
//! indices, their lemmas and chains, and machine verification of the
//! resulting Rogers-Ramanujan type identities.
//!
//! Two evaluation engines run side by side: exact evaluation at a rational
//! point `q = qv` for terminating identities, and truncated power series in
//! `q` for infinite ones.

pub mod bailey;
pub mod catalog;
pub mod error;
pub mod hypergeom;
pub mod monomial;
pub mod qpoch;
pub mod rational;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
pub use monomial::QMonomial;
pub use qpoch::{PochLength, PochSpec};
pub use rational::Rational;
pub use series::TruncatedSeries;
