use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diffop::DiffOperator;
use crate::diffring::format::PolyJson;
use crate::diffring::DiffPoly;

use super::ReductionError;

/// `target = Σ K_(j,m) · I_j^(m)`, checked when built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    target: DiffPoly,
    terms: BTreeMap<(u32, u32), DiffPoly>,
}

/// Re-expands `Σ K_(j,m) · I_j^(m)` against the generators `(j, I_j)`.
pub fn expand(
    n: u32,
    terms: &BTreeMap<(u32, u32), DiffPoly>,
    generators: &[(u32, DiffPoly)],
) -> Result<DiffPoly, ReductionError> {
    let mut acc = DiffPoly::zero(n);
    for ((j, m), k) in terms {
        let ij = generators
            .iter()
            .find(|(i, _)| i == j)
            .map(|(_, p)| p)
            .ok_or_else(|| ReductionError::BadInput(format!("no generator I_{j}")))?;
        acc += &(k * &ij.derive_n(*m));
    }
    Ok(acc)
}

impl Certificate {
    pub fn new(
        target: DiffPoly,
        terms: BTreeMap<(u32, u32), DiffPoly>,
        generators: &[(u32, DiffPoly)],
    ) -> Result<Self, ReductionError> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, k)| !k.is_zero()).collect();
        let back = expand(target.ambient_n(), &terms, generators)?;
        if back != target {
            return Err(ReductionError::CertificateMismatch(format!(
                "difference {}",
                &back - &target
            )));
        }
        Ok(Certificate { target, terms })
    }

    pub fn target(&self) -> &DiffPoly {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), DiffPoly> {
        &self.terms
    }

    /// The multipliers grouped into operators `K_j = Σ_m K_(j,m) ∂^m`, so
    /// that `target = Σ_j K_j(I_j)` with `K_j` applied to `I_j`.
    pub fn operators(&self) -> BTreeMap<u32, DiffOperator> {
        let n = self.target.ambient_n();
        let mut out: BTreeMap<u32, DiffOperator> = BTreeMap::new();
        for ((j, m), k) in &self.terms {
            out.entry(*j)
                .or_insert_with(|| DiffOperator::zero(n))
                .add_term(*m, k.clone());
        }
        out
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            target: PolyJson::from(&self.target),
            terms: self
                .terms
                .iter()
                .map(|(&(j, m), k)| CertificateTermJson {
                    j,
                    m,
                    multiplier: PolyJson::from(k),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub target: PolyJson,
    pub terms: Vec<CertificateTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTermJson {
    pub j: u32,
    pub m: u32,
    pub multiplier: PolyJson,
}

/// Why a polynomial vanishes on solutions of the constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// `target = antiderivative'`.
    TotalDerivative {
        target: DiffPoly,
        antiderivative: DiffPoly,
    },
    IdealMember(Certificate),
}

impl Decomposition {
    pub fn total_derivative(target: DiffPoly, antiderivative: DiffPoly) -> Result<Self, ReductionError> {
        if antiderivative.derive() != target {
            return Err(ReductionError::CertificateMismatch(format!(
                "({antiderivative})' != {target}"
            )));
        }
        Ok(Decomposition::TotalDerivative {
            target,
            antiderivative,
        })
    }

    pub fn target(&self) -> &DiffPoly {
        match self {
            Decomposition::TotalDerivative { target, .. } => target,
            Decomposition::IdealMember(c) => c.target(),
        }
    }

    pub fn antiderivative(&self) -> Option<&DiffPoly> {
        match self {
            Decomposition::TotalDerivative { antiderivative, .. } => Some(antiderivative),
            Decomposition::IdealMember(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Decomposition::IdealMember(c) => Some(c),
            Decomposition::TotalDerivative { .. } => None,
        }
    }
}
