//! The N-fold supersymmetric system and its constraint set.

pub mod ansatz;
pub mod conditions;
pub mod general;
pub mod params;
pub mod system;
pub mod transform;

pub use ansatz::{ansatz_substitution, assignment_from_names, parameter_names, ParamAssignment};
pub use conditions::{derive_conditions, eliminate_potentials, Condition, ConditionSet, ScaleNote, Stage};
pub use general::{check_j0, general_potentials, j0, j0_printed, J0Report};
pub use params::{solve_parameters, Branch, ParamSolution};
pub use system::{build_system, Potentials, SusySystem};
pub use transform::{paper_recombination, transform_conditions, Recombination};

use crate::diffring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SusyError {
    #[error("N={n} not supported: {reason}")]
    InvalidN { n: u32, reason: String },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no parameter assignment kills the targets: {0}")]
    Infeasible(String),
    #[error("parameter equations stay nonlinear: {0}")]
    Nonlinear(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

use crate::diffring::DiffPoly;

/// Runs the derivation pipeline up to `stage`. For the transformed stage the
/// parameters in `params` are fixed and the rest stay symbolic.
pub fn conditions_for(
    n: u32,
    stage: Stage,
    params: &ParamAssignment,
) -> Result<ConditionSet, SusyError> {
    let raw = derive_conditions(&build_system(n, Potentials::Symbolic)?)?;
    if stage == Stage::Raw {
        return Ok(raw);
    }
    let elim = eliminate_potentials(&raw)?;
    if stage == Stage::Eliminated {
        return Ok(elim);
    }
    let s = ansatz_substitution(n, params)?;
    transform_conditions(&elim, &s, &paper_recombination(n)?)
}

/// The transformed conditions with symbolic parameters as `(k, Ī_k)`.
pub fn symbolic_transformed(n: u32) -> Result<Vec<(u32, DiffPoly)>, SusyError> {
    let cs = conditions_for(n, Stage::Transformed, &ParamAssignment::new())?;
    Ok(cs.conditions.into_iter().map(|c| (c.k, c.poly)).collect())
}
