use crate::diffop::DiffOperator;
use crate::diffring::{q, DiffPoly, Generator};

use super::general::general_potentials;
use super::SusyError;

/// Which potentials the Hamiltonians carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Potentials {
    /// Independent symbols `V+` and `V-`.
    Symbolic,
    /// The pair solving the two top conditions, in terms of `w_{N-1}`,
    /// `w_{N-2}` and `C0`.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SusySystem {
    n: u32,
    charge_minus: DiffOperator,
    v_plus: DiffPoly,
    v_minus: DiffPoly,
}

/// `P_N^- = ∂^N + Σ w_k ∂^k` with `H^± = -½∂² + V^±`.
pub fn build_system(n: u32, potentials: Potentials) -> Result<SusySystem, SusyError> {
    if n < 1 {
        return Err(SusyError::InvalidN {
            n,
            reason: "the charge needs order at least 1".into(),
        });
    }
    let mut charge = DiffOperator::d_pow(n, n);
    for k in 0..n {
        charge.add_term(k, DiffPoly::var(n, Generator::w(k)));
    }
    let (v_plus, v_minus) = match potentials {
        Potentials::Symbolic => (
            DiffPoly::var(n, Generator::v_plus()),
            DiffPoly::var(n, Generator::v_minus()),
        ),
        Potentials::General => general_potentials(n)?,
    };
    Ok(SusySystem::from_parts(charge, v_plus, v_minus))
}

impl SusySystem {
    pub fn from_parts(charge_minus: DiffOperator, v_plus: DiffPoly, v_minus: DiffPoly) -> Self {
        SusySystem {
            n: charge_minus.ambient_n(),
            charge_minus,
            v_plus,
            v_minus,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn charge_minus(&self) -> &DiffOperator {
        &self.charge_minus
    }

    /// `P_N^+ = (P_N^-)^T`.
    pub fn charge_plus(&self) -> DiffOperator {
        self.charge_minus.transpose()
    }

    pub fn v_plus(&self) -> &DiffPoly {
        &self.v_plus
    }

    pub fn v_minus(&self) -> &DiffPoly {
        &self.v_minus
    }

    pub fn hamiltonian_plus(&self) -> DiffOperator {
        hamiltonian(&self.v_plus)
    }

    pub fn hamiltonian_minus(&self) -> DiffOperator {
        hamiltonian(&self.v_minus)
    }

    /// `P^- H^- - H^+ P^-`.
    pub fn intertwiner(&self) -> DiffOperator {
        let p = &self.charge_minus;
        &p.compose(&self.hamiltonian_minus()) - &self.hamiltonian_plus().compose(p)
    }

    /// Applies a substitution to the charge and both potentials.
    pub fn substitute(&self, s: &crate::diffring::Substitution) -> SusySystem {
        SusySystem::from_parts(
            self.charge_minus.substitute(s),
            s.apply(&self.v_plus),
            s.apply(&self.v_minus),
        )
    }
}

pub fn hamiltonian(v: &DiffPoly) -> DiffOperator {
    let n = v.ambient_n();
    DiffOperator::multiply(v.clone()).with_term(2, DiffPoly::constant(n, q(-1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::parse;

    #[test]
    fn two_fold_system() {
        let s = build_system(2, Potentials::Symbolic).unwrap();
        assert_eq!(s.charge_minus().plain(), "d^2 + w1*d + w0");
        assert_eq!(s.charge_plus().coefficient(0), parse("w0 - w1'", 2).unwrap());
        assert_eq!(s.hamiltonian_plus().coefficient(0), parse("V+", 2).unwrap());
    }

    #[test]
    fn one_fold_base_case_and_bad_n() {
        let s = build_system(1, Potentials::Symbolic).unwrap();
        assert_eq!(s.charge_minus().plain(), "d + w0");
        assert!(build_system(0, Potentials::Symbolic).is_err());
    }
}
