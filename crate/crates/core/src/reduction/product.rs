use num_traits::Zero;

use crate::diffop::DiffOperator;
use crate::diffring::{DiffPoly, Generator, Monomial, Substitution, Q};
use crate::susy::{
    ansatz_substitution, build_system, conditions_for, ParamAssignment, Potentials, Stage,
};

use super::equivalence::{op_equivalent, Equivalence};
use super::integral::{constant_monomials, IntegralConstant};
use super::membership::{ideal_membership_with, MembershipOptions};
use super::{Bounds, ReductionError};

/// One of the two products `P∓P±` compared with the polynomial in `H±`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSide {
    /// `+1` for `P−P+` against `H+`, `−1` for `P+P−` against `H−`.
    pub sign: i8,
    pub label: &'static str,
    /// `P∓P± − 2^N[(H±+C0)^N + Σ C_k (H±+C0)^{N−k−1}]` with `C_k -> J_k`.
    pub residual: DiffOperator,
    pub equivalence: Equivalence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductReport {
    pub n: u32,
    /// The integrals used, after calibrating the constant part of the last.
    pub integrals: Vec<IntegralConstant>,
    /// Constants added to the last integral by the calibration.
    pub calibrated: Vec<(Monomial, Q)>,
    pub sides: Vec<ProductSide>,
    /// The eliminated conditions `I_j` after the transformation.
    pub conditions: Vec<(u32, DiffPoly)>,
}

/// `C_k -> J_k` for `k ≥ 1`, with earlier constants inside `J_k` replaced
/// too.
pub fn constants_to_integrals(n: u32, integrals: &[IntegralConstant]) -> Substitution {
    let mut sorted: Vec<&IntegralConstant> = integrals.iter().collect();
    sorted.sort_by_key(|ic| ic.k);
    let mut s = Substitution::identity(n);
    for ic in sorted {
        let img = s.apply(&ic.j);
        s.insert(Generator::c(ic.k), img).expect("base generator");
    }
    s
}

fn hamiltonian_polynomial(
    n: u32,
    h: &DiffOperator,
    c_to_j: &Substitution,
) -> DiffOperator {
    let c0 = DiffOperator::multiply(DiffPoly::var(n, Generator::c(0)));
    let shifted = h + &c0;
    let mut acc = shifted.pow(n);
    for k in 1..n {
        let ck = c_to_j.apply(&DiffPoly::var(n, Generator::c(k)));
        acc = &acc + &DiffOperator::multiply(ck).compose(&shifted.pow(n - k - 1));
    }
    acc.scale(&Q::from_integer((1u64 << n).into()))
}

/// Computes both products for the parameters `params` and certifies the
/// residuals against the transformed eliminated conditions.
pub fn verify_product(
    n: u32,
    params: &ParamAssignment,
    integrals: &[IntegralConstant],
    bounds: Bounds,
) -> Result<ProductReport, ReductionError> {
    let s = ansatz_substitution(n, params)?;
    let sys = build_system(n, Potentials::General)?.substitute(&s);
    let conditions: Vec<(u32, DiffPoly)> = conditions_for(n, Stage::Eliminated, params)?
        .substitute(&s)
        .conditions
        .into_iter()
        .map(|c| (c.k, c.poly))
        .collect();
    let minus = sys.charge_minus().clone();
    let plus = sys.charge_plus();
    let mut integrals: Vec<IntegralConstant> = integrals.to_vec();
    let mut calibrated = Vec::new();
    let scale = Q::from_integer((1u64 << n).into());
    let pairs = [
        (1i8, "P-P+", minus.compose(&plus), sys.hamiltonian_plus()),
        (-1i8, "P+P-", plus.compose(&minus), sys.hamiltonian_minus()),
    ];
    // The constant part of J_{N-1} only enters the order-0 coefficient.
    if let Some(last) = integrals.iter().position(|ic| ic.k + 1 == n) {
        let consts = constant_monomials(n, n - 1);
        if !consts.is_empty() {
            let c_to_j = constants_to_integrals(n, &integrals);
            let (_, _, prod, h) = &pairs[0];
            let residual = prod - &hamiltonian_polynomial(n, h, &c_to_j);
            let extra: Vec<DiffPoly> = consts
                .iter()
                .map(|m| c_to_j.apply(&DiffPoly::term(n, m.clone(), scale.clone())))
                .collect();
            let opts = MembershipOptions {
                bounds,
                max_derivative: residual.order().map(|o| o + 2),
                extra,
            };
            let (_, e) = ideal_membership_with(&residual.coefficient(0), &conditions, &opts)?;
            let mut add = DiffPoly::zero(n);
            for (m, x) in consts.iter().zip(e) {
                if !x.is_zero() {
                    add.add_term(m.clone(), x.clone());
                    calibrated.push((m.clone(), x));
                }
            }
            integrals[last] = integrals[last].clone().with_constant(&add);
        }
    }
    let c_to_j = constants_to_integrals(n, &integrals);
    let mut sides = Vec::new();
    for (sign, label, prod, h) in pairs {
        let rhs = hamiltonian_polynomial(n, &h, &c_to_j);
        let residual = &prod - &rhs;
        let equivalence = op_equivalent(&prod, &rhs, &conditions, bounds)?;
        sides.push(ProductSide {
            sign,
            label,
            residual,
            equivalence,
        });
    }
    Ok(ProductReport {
        n,
        integrals,
        calibrated,
        sides,
        conditions,
    })
}
