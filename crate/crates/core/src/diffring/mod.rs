//! Graded differential polynomial ring over the rationals.

pub mod format;
pub mod fraction;
pub mod generator;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod subst;

pub use fraction::Fraction;
pub use generator::{Family, Generator, ParamKind};
pub use monomial::Monomial;
pub use parse::{parse, parse_fraction, parse_operator, ParseError};
pub use poly::{q, qi, DiffPoly};
pub use subst::Substitution;

/// Exact rational coefficients.
pub type Q = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("ambient N mismatch: {left} vs {right}")]
    AmbientMismatch { left: u32, right: u32 },
    #[error("inhomogeneous polynomial: {offending:?}")]
    Inhomogeneous { offending: Vec<(String, i64)> },
    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("symbol {symbol} out of range for N={n}")]
    OutOfRange { symbol: String, n: u32 },
    #[error("{0} is not a base generator")]
    NotBaseGenerator(String),
    #[error("malformed JSON: {0}")]
    BadJson(String),
}
