use std::collections::BTreeMap;

use crate::diffop::DiffOperator;
use crate::diffring::DiffPoly;

use super::certificate::Certificate;
use super::membership::{ideal_membership_with, MembershipOptions};
use super::{Bounds, ReductionError};

/// `A ∼ B`: every coefficient of `A − B` lies in the constraint module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub difference: DiffOperator,
    /// One certificate per nonzero coefficient of `A − B`, by order.
    pub certificates: BTreeMap<u32, Certificate>,
}

impl Equivalence {
    /// `Σ_i f_i ∂^i` written as the operators `K_ij` per order `i`.
    pub fn operators(&self) -> BTreeMap<u32, BTreeMap<u32, DiffOperator>> {
        self.certificates
            .iter()
            .map(|(i, c)| (*i, c.operators()))
            .collect()
    }
}

/// Certifies `A − B` coefficient by coefficient. Derivatives of the
/// conditions are capped at `order(A − B) + 2`.
pub fn op_equivalent(
    a: &DiffOperator,
    b: &DiffOperator,
    generators: &[(u32, DiffPoly)],
    bounds: Bounds,
) -> Result<Equivalence, ReductionError> {
    let difference = a - b;
    let cap = difference.order().map(|o| o + 2);
    let opts = MembershipOptions {
        bounds,
        max_derivative: cap,
        extra: Vec::new(),
    };
    let mut certificates = BTreeMap::new();
    for (i, c) in difference.coeffs() {
        let (cert, _) = ideal_membership_with(c, generators, &opts)?;
        certificates.insert(i, cert);
    }
    Ok(Equivalence {
        difference,
        certificates,
    })
}
