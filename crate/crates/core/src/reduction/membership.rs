use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diffring::{DiffPoly, Family, Monomial, Q};
use crate::linalg::LinearSystem;

use super::basis::{live_generators, monomial_basis};
use super::certificate::{Certificate, Decomposition};
use super::{Bounds, ReductionError};

/// The system `Σ x_c · columns[c] = target`, one equation per monomial.
pub(crate) fn column_system(columns: &[DiffPoly], target: &DiffPoly) -> LinearSystem {
    let mut rows: BTreeMap<&Monomial, Vec<(usize, Q)>> = BTreeMap::new();
    for (c, p) in columns.iter().enumerate() {
        for (m, v) in p.terms() {
            rows.entry(m).or_default().push((c, v.clone()));
        }
    }
    for (m, _) in target.terms() {
        rows.entry(m).or_default();
    }
    let mut sys = LinearSystem::new(columns.len());
    for (m, coeffs) in rows {
        sys.add_equation(coeffs, target.coeff(m));
    }
    sys
}

pub(crate) fn reject_params(p: &DiffPoly) -> Result<(), ReductionError> {
    if p.has_family(Family::Param) {
        return Err(ReductionError::Symbolic(p.to_string()));
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct MembershipOptions {
    pub bounds: Bounds,
    /// Cap on the derivative order m of I_j^(m), on top of the weight bound.
    pub max_derivative: Option<u32>,
    /// Further polynomials allowed with rational coefficients.
    pub extra: Vec<DiffPoly>,
}

/// Decides whether `target` lies in the module spanned over the ring by
/// the `I_j^(m)`, with multipliers from the monomial basis of the
/// complementary weight.
pub fn ideal_membership(
    target: &DiffPoly,
    generators: &[(u32, DiffPoly)],
    bounds: Bounds,
) -> Result<Decomposition, ReductionError> {
    let opts = MembershipOptions {
        bounds,
        ..Default::default()
    };
    ideal_membership_with(target, generators, &opts).map(|(c, _)| Decomposition::IdealMember(c))
}

/// Like [`ideal_membership`], also solving for rational coefficients `e` of
/// `opts.extra`. The certificate is for `target − Σ e_i·extra_i`.
pub fn ideal_membership_with(
    target: &DiffPoly,
    generators: &[(u32, DiffPoly)],
    opts: &MembershipOptions,
) -> Result<(Certificate, Vec<Q>), ReductionError> {
    let n = target.ambient_n();
    reject_params(target)?;
    for (_, g) in generators {
        reject_params(g)?;
    }
    let live = live_generators(
        std::iter::once(target)
            .chain(generators.iter().map(|(_, p)| p))
            .chain(opts.extra.iter()),
    );
    let weight = if target.is_zero() {
        match opts.extra.iter().find(|e| !e.is_zero()) {
            Some(e) => e.weight_of()?,
            None => return Ok((Certificate::new(target.clone(), BTreeMap::new(), generators)?, vec![])),
        }
    } else {
        target.weight_of()?
    };
    let mut columns: Vec<DiffPoly> = Vec::new();
    let mut keys: Vec<(u32, u32, Monomial)> = Vec::new();
    let mut sorted: Vec<&(u32, DiffPoly)> = generators.iter().filter(|(_, p)| !p.is_zero()).collect();
    sorted.sort_by_key(|(j, _)| *j);
    for (j, ij) in sorted {
        let wj = ij.weight_of()?;
        let mut m = 0u32;
        let mut dij = ij.clone();
        while wj + m as i64 <= weight && opts.max_derivative.is_none_or(|cap| m <= cap) {
            for b in monomial_basis(n, weight - wj - m as i64, &live, opts.bounds.deriv_bound) {
                columns.push(dij.mul_monomial(&b));
                keys.push((*j, m, b));
            }
            dij = dij.derive();
            m += 1;
        }
    }
    let nbase = columns.len();
    columns.extend(opts.extra.iter().cloned());
    let sys = column_system(&columns, target);
    let Some(x) = sys.particular() else {
        return Err(ReductionError::NotMember {
            weight,
            bound: opts.bounds.deriv_bound,
        });
    };
    let mut terms: BTreeMap<(u32, u32), DiffPoly> = BTreeMap::new();
    for (c, (j, m, b)) in keys.into_iter().enumerate() {
        if !x[c].is_zero() {
            terms
                .entry((j, m))
                .or_insert_with(|| DiffPoly::zero(n))
                .add_term(b, x[c].clone());
        }
    }
    let extra: Vec<Q> = x[nbase..].to_vec();
    let mut adjusted = target.clone();
    for (e, p) in extra.iter().zip(&opts.extra) {
        adjusted -= &p.scale(e);
    }
    Ok((Certificate::new(adjusted, terms, generators)?, extra))
}
