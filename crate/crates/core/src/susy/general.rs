//! Closed forms valid for every N, instantiated at a numeric N.

use crate::diffring::{q, qi, DiffPoly, Generator};

use super::conditions::derive_conditions;
use super::system::{build_system, Potentials};
use super::SusyError;

/// `w_k^{(m)}`, or zero when `k` is negative (absent for small N).
fn w(n: u32, k: i64, m: u32) -> DiffPoly {
    if k < 0 {
        DiffPoly::zero(n)
    } else {
        DiffPoly::var(n, Generator::w(k as u32).with_order(m))
    }
}

fn v(n: u32, plus: bool, m: u32) -> DiffPoly {
    let g = if plus { Generator::v_plus() } else { Generator::v_minus() };
    DiffPoly::var(n, g.with_order(m))
}


/// `V^± = -(1/N)w_{N-2} + ((N-1)/2N ± 1/2)w_{N-1}' + (1/2N)w_{N-1}² - C0`.
pub fn general_potentials(n: u32) -> Result<(DiffPoly, DiffPoly), SusyError> {
    if n < 2 {
        return Err(SusyError::InvalidN {
            n,
            reason: "the general potentials need N >= 2".into(),
        });
    }
    let nn = n as i64;
    let top = n as i64 - 1;
    let common = &(&w(n, top - 1, 0).scale(&q(-1, nn)) + &w(n, top, 0).pow(2).scale(&q(1, 2 * nn)))
        - &DiffPoly::var(n, Generator::c(0));
    let half = q(1, 2);
    let base = q(nn - 1, 2 * nn);
    let vp = &common + &w(n, top, 1).scale(&(&base + &half));
    let vm = &common + &w(n, top, 1).scale(&(&base - &half));
    Ok((vp, vm))
}

/// `I_N = w_{N-1}' - (V+ - V-)`.
pub fn top_condition(n: u32) -> DiffPoly {
    let top = n as i64 - 1;
    &w(n, top, 1) - &(&v(n, true, 0) - &v(n, false, 0))
}

/// `2I_{N-1} = w_{N-1}'' + 2w_{N-2}' + 2N V-' - 2w_{N-1}(V+ - V-)`.
pub fn second_condition_doubled(n: u32) -> DiffPoly {
    let top = n as i64 - 1;
    let dv = &v(n, true, 0) - &v(n, false, 0);
    &(&(&w(n, top, 2) + &w(n, top - 1, 1).scale(&qi(2)))
        + &v(n, false, 1).scale(&qi(2 * n as i64)))
        - &(&w(n, top, 0) * &dv).scale(&qi(2))
}

/// The closed form of `-4N I_{N-2}` after the potentials are eliminated.
pub fn minus_4n_condition(n: u32) -> DiffPoly {
    let nn = n as i64;
    let a = nn - 1;
    let terms: Vec<(i64, DiffPoly)> = vec![
        (nn * (nn - 1), w(n, a, 3)),
        (2 * nn * (nn - 2), w(n, a - 1, 2)),
        (-4 * nn, w(n, a - 2, 1)),
        (-2 * (nn - 1) * (nn - 1), &w(n, a, 0) * &w(n, a, 2)),
        (-2 * nn * (nn - 1), w(n, a, 1).pow(2)),
        (4 * nn, &w(n, a, 1) * &w(n, a - 1, 0)),
        (4 * (nn - 1), &w(n, a, 0) * &w(n, a - 1, 1)),
        (-4 * (nn - 1), &w(n, a, 0).pow(2) * &w(n, a, 1)),
    ];
    sum(n, terms)
}

/// The closed form of `-12N I_{N-3}`; a `w_{N-4}` term is dropped when
/// `N < 4`.
pub fn minus_12n_condition(n: u32) -> DiffPoly {
    let nn = n as i64;
    let a = nn - 1;
    let (w1, w2, w3, w4) = (a, a - 1, a - 2, a - 3);
    let p = |k, m| w(n, k, m);
    let terms: Vec<(i64, DiffPoly)> = vec![
        (nn * (nn - 1) * (nn - 2), &p(w1, 4) + &p(w2, 3).scale(&qi(2))),
        (-6 * nn, &p(w3, 2) + &p(w4, 1).scale(&qi(2))),
        (-(nn - 1) * (nn - 2) * (2 * nn - 3), &p(w1, 0) * &p(w1, 3)),
        (-(nn - 1) * (nn - 2) * 6 * nn, &p(w1, 1) * &p(w1, 2)),
        (6 * (nn - 2), &p(w1, 2) * &p(w2, 0)),
        (6 * (nn - 2) * (nn - 1), &p(w1, 0) * &p(w2, 2)),
        (12 * nn, &p(w1, 1) * &p(w3, 0)),
        (12 * (nn - 2), &p(w2, 0) * &p(w2, 1)),
        (-6 * (nn - 1) * (nn - 2), &p(w1, 0).pow(2) * &p(w1, 2)),
        (-6 * (nn - 1) * (nn - 2), &p(w1, 0) * &p(w1, 1).pow(2)),
        (-12 * (nn - 2), &(&p(w1, 0) * &p(w1, 1)) * &p(w2, 0)),
    ];
    sum(n, terms)
}

fn sum(n: u32, terms: Vec<(i64, DiffPoly)>) -> DiffPoly {
    terms
        .into_iter()
        .fold(DiffPoly::zero(n), |acc, (k, t)| &acc + &t.scale(&qi(k)))
}

/// `J0 = -V- - (1/N)w_{N-2} - (1/2N)w_{N-1}' + (1/2N)w_{N-1}²`, the value of
/// `C0` read off from the general `V-`.
pub fn j0(n: u32) -> Result<DiffPoly, SusyError> {
    let (_, vm) = general_potentials(n)?;
    Ok(&(&vm + &DiffPoly::var(n, Generator::c(0))) - &v(n, false, 0))
}

/// The printed form of `J0`, with `+(1/2N)w_{N-1}'`.
pub fn j0_printed(n: u32) -> DiffPoly {
    let nn = n as i64;
    let a = nn - 1;
    let parts = [
        v(n, false, 0).scale(&qi(-1)),
        w(n, a - 1, 0).scale(&q(-1, nn)),
        w(n, a, 1).scale(&q(1, 2 * nn)),
        w(n, a, 0).pow(2).scale(&q(1, 2 * nn)),
    ];
    parts.iter().fold(DiffPoly::zero(n), |acc, t| &acc + t)
}

/// Outcome of the `J0` check for one N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct J0Report {
    pub n: u32,
    pub residual: DiffPoly,
    /// `(j, weight of L_{0j})` for the two nonzero multipliers.
    pub multiplier_weights: Vec<(u32, i64)>,
    /// The same identity with [`j0_printed`] in place of `J0`.
    pub printed_residual: DiffPoly,
    pub passed: bool,
}

/// Checks `J0' = (1/N) w_{N-1} I_N - (1/N) I_{N-1}` with symbolic potentials.
pub fn check_j0(n: u32) -> Result<J0Report, SusyError> {
    if n < 2 {
        return Err(SusyError::InvalidN {
            n,
            reason: "J0 needs N >= 2".into(),
        });
    }
    let sys = build_system(n, Potentials::Symbolic)?;
    let cs = derive_conditions(&sys)?;
    let i_top = cs.get(n).cloned().unwrap_or_else(|| DiffPoly::zero(n));
    let i_next = cs.get(n - 1).cloned().unwrap_or_else(|| DiffPoly::zero(n));
    let l_top = w(n, n as i64 - 1, 0).scale(&q(1, n as i64));
    let l_next = DiffPoly::constant(n, q(-1, n as i64));
    let rhs = &(&l_top * &i_top) + &(&l_next * &i_next);
    let residual = &j0(n)?.derive() - &rhs;
    let printed_residual = &j0_printed(n).derive() - &rhs;
    let weights = [(n, &l_top), (n - 1, &l_next)]
        .into_iter()
        .map(|(j, l)| (j, l.weight_of().unwrap_or(0)))
        .collect::<Vec<_>>();
    let weights_ok = weights
        .iter()
        .all(|&(j, wt)| wt == -(n as i64 - j as i64 - 1));
    Ok(J0Report {
        n,
        passed: residual.is_zero() && weights_ok,
        residual,
        multiplier_weights: weights,
        printed_residual,
    })
}
