use crate::diffring::{DiffPoly, Fraction, Monomial, Substitution};

use super::certificate::Certificate;
use super::membership::{ideal_membership_with, MembershipOptions};
use super::{Bounds, ReductionError};

/// Outcome of checking `lhs = rhs` between fractions after clearing the
/// common monomial denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalReport {
    pub denominator: Monomial,
    /// `denominator · (lhs − rhs)` with the integral constants replaced.
    pub cleared: DiffPoly,
    /// Present when the cleared difference is nonzero but lies in the
    /// module of `module`.
    pub certificate: Option<Certificate>,
    pub passed: bool,
}

/// Clears denominators in `lhs − rhs`, applies `c_to_j`, and accepts zero
/// or a member of the module spanned by `module`.
pub fn check_rational(
    lhs: &Fraction,
    rhs: &Fraction,
    c_to_j: &Substitution,
    module: &[(u32, DiffPoly)],
    bounds: Bounds,
) -> Result<RationalReport, ReductionError> {
    let diff = lhs.sub(rhs);
    let denominator = diff.denominator().clone();
    let cleared = c_to_j.apply(diff.numerator());
    if cleared.is_zero() {
        return Ok(RationalReport {
            denominator,
            cleared,
            certificate: None,
            passed: true,
        });
    }
    if module.is_empty() {
        return Ok(RationalReport {
            denominator,
            cleared,
            certificate: None,
            passed: false,
        });
    }
    let opts = MembershipOptions {
        bounds,
        ..Default::default()
    };
    match ideal_membership_with(&cleared, module, &opts) {
        Ok((c, _)) => Ok(RationalReport {
            denominator,
            cleared,
            certificate: Some(c),
            passed: true,
        }),
        Err(ReductionError::NotMember { .. }) => Ok(RationalReport {
            denominator,
            cleared,
            certificate: None,
            passed: false,
        }),
        Err(e) => Err(e),
    }
}
