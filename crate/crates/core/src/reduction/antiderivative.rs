use num_traits::One;

use crate::diffring::{DiffPoly, Monomial, Q};

use super::basis::{live_generators, monomial_basis};
use super::certificate::Decomposition;
use super::membership::{column_system, reject_params};
use super::{Bounds, ReductionError};

/// Finds `q` with `q' = p` over the monomials of one weight less.
///
/// Constant factors (C_k) commute with the derivation, so each slice of `p`
/// with a fixed constant part is integrated on its own. Pure constants are
/// never part of the answer.
pub fn antiderivative(p: &DiffPoly, bounds: Bounds) -> Result<Decomposition, ReductionError> {
    let n = p.ambient_n();
    reject_params(p)?;
    if p.is_zero() {
        return Decomposition::total_derivative(p.clone(), p.clone());
    }
    let weight = p.weight_of()?;
    let fail = ReductionError::NotATotalDerivative {
        weight,
        bound: bounds.deriv_bound,
    };
    let mut q = DiffPoly::zero(n);
    for (cst, slice) in p.collect_by_constants() {
        let max_order = slice.terms().map(|(m, _)| m.max_order()).max().unwrap_or(0);
        if max_order == 0 {
            return Err(fail);
        }
        let w = slice.weight_of()?;
        let live = live_generators([&slice]);
        let cap = bounds.deriv_bound.min(max_order - 1);
        let basis: Vec<Monomial> = monomial_basis(n, w - 1, &live, cap)
            .into_iter()
            .filter(|m| !m.is_constant())
            .collect();
        let columns: Vec<DiffPoly> = basis
            .iter()
            .map(|m| DiffPoly::term(n, m.clone(), Q::one()).derive())
            .collect();
        let x = column_system(&columns, &slice)
            .particular()
            .ok_or_else(|| fail.clone())?;
        for (m, c) in basis.iter().zip(x) {
            q.add_term(m.mul(&cst), c);
        }
    }
    Decomposition::total_derivative(p.clone(), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::parse;

    #[test]
    fn integrates_with_constants() {
        let p = parse("2*w0*w0' + C0*w0'", 2).unwrap();
        let d = antiderivative(&p, Bounds::default()).unwrap();
        assert_eq!(d.antiderivative().unwrap(), &parse("w0^2 + C0*w0", 2).unwrap());
    }

    #[test]
    fn rejects_non_derivatives() {
        let p = parse("w1*w1''", 2).unwrap();
        assert!(matches!(
            antiderivative(&p, Bounds::default()),
            Err(ReductionError::NotATotalDerivative { .. })
        ));
    }
}
