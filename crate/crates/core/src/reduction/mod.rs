//! Total derivatives, integral constants and equivalence modulo the
//! constraint module.

pub mod antiderivative;
pub mod basis;
pub mod certificate;
pub mod equivalence;
pub mod integral;
pub mod membership;
pub mod product;
pub mod rational;

pub use antiderivative::antiderivative;
pub use basis::{live_generators, monomial_basis};
pub use certificate::{Certificate, Decomposition};
pub use equivalence::{op_equivalent, Equivalence};
pub use integral::{search_integral, IntegralConstant, IntegralScale, SearchPolicy};
pub use membership::{ideal_membership, ideal_membership_with, MembershipOptions};
pub use product::{verify_product, ProductReport, ProductSide};
pub use rational::{check_rational, RationalReport};

use crate::diffring::RingError;
use crate::susy::SusyError;

/// Default cap on derivative orders in enumerated bases.
pub const DEFAULT_DERIV_BOUND: u32 = 12;

/// Environment variable overriding [`DEFAULT_DERIV_BOUND`].
pub const DERIV_BOUND_ENV: &str = "NFOLD_DERIV_BOUND";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub deriv_bound: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            deriv_bound: DEFAULT_DERIV_BOUND,
        }
    }
}

impl Bounds {
    /// The default bounds with the environment override applied. An
    /// unparsable value is an error rather than silently ignored.
    pub fn from_env() -> Result<Self, ReductionError> {
        match std::env::var(DERIV_BOUND_ENV) {
            Err(_) => Ok(Bounds::default()),
            Ok(v) => v
                .trim()
                .parse()
                .map(|deriv_bound| Bounds { deriv_bound })
                .map_err(|_| ReductionError::BadInput(format!("{DERIV_BOUND_ENV}={v}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Susy(#[from] SusyError),
    #[error("not a total derivative within weight {weight} and derivative bound {bound}")]
    NotATotalDerivative { weight: i64, bound: u32 },
    #[error("not a member of the weight-{weight} module with derivative bound {bound}")]
    NotMember { weight: i64, bound: u32 },
    #[error("no integral J_{k} found (derivative bound {bound}): {reason}")]
    SearchExhausted { k: u32, bound: u32, reason: String },
    #[error("certificate does not re-expand to its target: {0}")]
    CertificateMismatch(String),
    #[error("symbolic parameters are not supported here: {0}")]
    Symbolic(String),
    #[error("bad input: {0}")]
    BadInput(String),
}
