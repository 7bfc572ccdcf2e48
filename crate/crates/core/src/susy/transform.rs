use num_traits::One;

use crate::diffring::{q, qi, DiffPoly, Family, Generator, Monomial, Substitution, Q};

use super::conditions::{Condition, ConditionSet, ScaleNote, Stage};
use super::SusyError;

/// `Ī_k = Σ c·∂^m I_j` for each output row.
///
/// With `reduce_pivots`, each row is afterwards reduced by the rows before
/// it: a row whose expression contains `c·u_i'` with a constant `c` removes
/// every occurrence of `u_i'` from the later rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recombination {
    pub rows: Vec<(u32, Vec<(u32, Q, u32)>)>,
    pub reduce_pivots: bool,
}

impl Recombination {
    pub fn identity(indices: &[u32]) -> Self {
        Recombination {
            rows: indices.iter().map(|&k| (k, vec![(k, qi(1), 0)])).collect(),
            reduce_pivots: false,
        }
    }

    /// Evaluates the recombination on arbitrary polynomials `I_j`.
    pub fn apply<F: Fn(u32) -> Option<DiffPoly>>(
        &self,
        n: u32,
        lookup: F,
    ) -> Result<Vec<(u32, DiffPoly)>, SusyError> {
        let mut out = Vec::new();
        for (k, entries) in &self.rows {
            let mut acc = DiffPoly::zero(n);
            for (j, c, m) in entries {
                let ij = lookup(*j).ok_or_else(|| {
                    SusyError::ShapeMismatch(format!("row {k} refers to missing I_{j}"))
                })?;
                acc += &ij.derive_n(*m).scale(c);
            }
            out.push((*k, acc));
        }
        if self.reduce_pivots {
            reduce_by_pivots(&mut out);
        }
        Ok(out)
    }
}

/// A first-derivative `u_i'` occurring linearly with a constant coefficient.
fn pivot(p: &DiffPoly) -> Option<(Generator, Q)> {
    p.terms().find_map(|(m, c)| match m.factors() {
        [(g, 1)] if g.family == Family::U && g.order == 1 => Some((*g, c.clone())),
        _ => None,
    })
}

fn reduce_by_pivots(rows: &mut [(u32, DiffPoly)]) {
    for i in 0..rows.len() {
        let Some((g, lead)) = pivot(&rows[i].1) else {
            continue;
        };
        let base = rows[i].1.scale(&(Q::one() / lead));
        let n = base.ambient_n();
        let single = Monomial::var(g);
        for row in rows.iter_mut().skip(i + 1) {
            let mut multiplier = DiffPoly::zero(n);
            for (m, c) in row.1.terms() {
                if m.exponent(g) == 1 {
                    multiplier.add_term(m.div(&single).expect("divisible"), c.clone());
                }
            }
            if !multiplier.is_zero() {
                row.1 -= &(&multiplier * &base);
            }
        }
    }
}

/// The recombinations used to simplify the transformed
/// conditions.
pub fn paper_recombination(n: u32) -> Result<Recombination, SusyError> {
    let rows = match n {
        2 => vec![(0, vec![(0, qi(1), 0)])],
        3 => vec![
            (1, vec![(1, qi(1), 0)]),
            (0, vec![(0, qi(-2), 0), (1, qi(1), 1)]),
        ],
        4 => vec![
            (2, vec![(2, qi(4), 0)]),
            (1, vec![(1, qi(1), 0), (2, qi(-1), 1)]),
            (0, vec![(0, qi(-16), 0), (1, qi(8), 1), (2, qi(-4), 2)]),
        ],
        _ => {
            return Err(SusyError::InvalidN {
                n,
                reason: "recombinations exist for N = 2, 3, 4".into(),
            })
        }
    };
    Ok(Recombination {
        rows,
        reduce_pivots: true,
    })
}

fn transformed_notes(n: u32) -> Vec<ScaleNote> {
    let mk = |k: u32, f: Q, label: &str| ScaleNote {
        k,
        factor: f,
        label: label.to_string(),
    };
    match n {
        2 => vec![mk(0, qi(-4), "-4I_0")],
        3 => vec![mk(1, qi(-3), "-3Ibar_1"), mk(0, qi(3), "3Ibar_0")],
        4 => vec![
            mk(2, qi(1), "Ibar_2"),
            mk(1, qi(4), "4Ibar_1"),
            mk(0, qi(1), "Ibar_0"),
        ],
        _ => vec![mk(0, q(1, 1), "Ibar_0")],
    }
}

/// Substitutes `s` into eliminated conditions and recombines them.
pub fn transform_conditions(
    cs: &ConditionSet,
    s: &Substitution,
    recombination: &Recombination,
) -> Result<ConditionSet, SusyError> {
    if cs.stage != Stage::Eliminated {
        return Err(SusyError::ShapeMismatch(format!(
            "transformation needs eliminated conditions, got {}",
            cs.stage
        )));
    }
    let substituted = cs.substitute(s);
    let rows = recombination.apply(cs.n, |j| substituted.get(j).cloned())?;
    Ok(ConditionSet {
        n: cs.n,
        stage: Stage::Transformed,
        conditions: rows
            .into_iter()
            .map(|(k, poly)| Condition { k, poly })
            .collect(),
        scale_notes: transformed_notes(cs.n),
    })
}
