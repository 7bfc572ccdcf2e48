use std::fmt;

use crate::diffring::{qi, DiffPoly, Generator, Substitution, Q};

use super::general::general_potentials;
use super::system::SusySystem;
use super::SusyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Raw,
    Eliminated,
    Transformed,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Raw => "raw",
            Stage::Eliminated => "eliminated",
            Stage::Transformed => "transformed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub k: u32,
    pub poly: DiffPoly,
}

/// A displayed normalization: `factor * I_k` is shown as `label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleNote {
    pub k: u32,
    pub factor: Q,
    pub label: String,
}

/// The constraints of one system, highest `k` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionSet {
    pub n: u32,
    pub stage: Stage,
    pub conditions: Vec<Condition>,
    pub scale_notes: Vec<ScaleNote>,
}

impl ConditionSet {
    pub fn get(&self, k: u32) -> Option<&DiffPoly> {
        self.conditions.iter().find(|c| c.k == k).map(|c| &c.poly)
    }

    pub fn indices(&self) -> Vec<u32> {
        self.conditions.iter().map(|c| c.k).collect()
    }

    pub fn polys(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.conditions.iter().map(|c| (c.k, &c.poly))
    }

    /// The first recorded display factor for `I_k`, or one.
    pub fn display_factor(&self, k: u32) -> Q {
        self.scale_notes
            .iter()
            .find(|s| s.k == k)
            .map(|s| s.factor.clone())
            .unwrap_or_else(|| qi(1))
    }

    /// Applies `s` to every condition.
    pub fn substitute(&self, s: &Substitution) -> ConditionSet {
        ConditionSet {
            conditions: self
                .conditions
                .iter()
                .map(|c| Condition {
                    k: c.k,
                    poly: s.apply(&c.poly),
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Expected weight of the `k`-th condition, `N + 2 - k`.
    pub fn expected_weight(&self, k: u32) -> i64 {
        self.n as i64 + 2 - k as i64
    }
}

fn note(k: u32, factor: i64, label: impl Into<String>) -> ScaleNote {
    ScaleNote {
        k,
        factor: qi(factor),
        label: label.into(),
    }
}

/// Expands the intertwiner and returns the coefficients of `∂^N .. ∂^0`.
pub fn derive_conditions(sys: &SusySystem) -> Result<ConditionSet, SusyError> {
    let n = sys.n();
    let op = sys.intertwiner();
    if let Some(top) = op.order() {
        if top > n {
            return Err(SusyError::Inconsistent(format!(
                "coefficient of d^{top} survives: {}",
                op.coefficient(top)
            )));
        }
    }
    let conditions = (0..=n)
        .rev()
        .map(|k| Condition {
            k,
            poly: op.coefficient(k),
        })
        .collect();
    let mut scale_notes = vec![note(n, 1, format!("I_{n}"))];
    for k in (0..n).rev() {
        scale_notes.push(note(k, 2, format!("2I_{k}")));
    }
    Ok(ConditionSet {
        n,
        stage: Stage::Raw,
        conditions,
        scale_notes,
    })
}

/// Substitutes the general potentials and keeps `I_{N-2} .. I_0`.
pub fn eliminate_potentials(cs: &ConditionSet) -> Result<ConditionSet, SusyError> {
    let n = cs.n;
    if cs.stage != Stage::Raw {
        return Err(SusyError::ShapeMismatch(format!(
            "potential elimination needs raw conditions, got {}",
            cs.stage
        )));
    }
    let (vp, vm) = general_potentials(n)?;
    let s = Substitution::identity(n)
        .with(Generator::v_plus(), vp)?
        .with(Generator::v_minus(), vm)?;
    let mut conditions = Vec::new();
    for c in &cs.conditions {
        let p = s.apply(&c.poly);
        if c.k + 2 > n {
            if !p.is_zero() {
                return Err(SusyError::Inconsistent(format!(
                    "I_{} does not vanish under the general potentials: {p}",
                    c.k
                )));
            }
            continue;
        }
        conditions.push(Condition { k: c.k, poly: p });
    }
    let mut scale_notes = Vec::new();
    let nn = n as i64;
    if n <= 4 {
        for k in (0..n - 1).rev() {
            scale_notes.push(note(k, -2 * nn, format!("-{}I_{k}", 2 * nn)));
        }
    }
    scale_notes.push(note(n - 2, -4 * nn, format!("-{}I_{}", 4 * nn, n - 2)));
    if n >= 3 {
        scale_notes.push(note(n - 3, -12 * nn, format!("-{}I_{}", 12 * nn, n - 3)));
    }
    Ok(ConditionSet {
        n,
        stage: Stage::Eliminated,
        conditions,
        scale_notes,
    })
}

/// True when every condition is zero or homogeneous of weight `N + 2 - k`.
pub fn weights_consistent(cs: &ConditionSet) -> bool {
    cs.conditions.iter().all(|c| {
        c.poly.is_zero() || c.poly.weight_of().ok() == Some(cs.expected_weight(c.k))
    })
}

