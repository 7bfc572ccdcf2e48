use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::diffop::DiffOperator;
use crate::diffring::{DiffPoly, Generator, Monomial, Substitution, Q};
use crate::linalg::LinearSystem;
use crate::susy::ConditionSet;

use super::basis::{live_generators, monomial_basis};
use super::membership::{column_system, reject_params};
use super::{Bounds, ReductionError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchPolicy {
    pub bounds: Bounds,
    /// Also allow first-order multipliers `a + b∂`.
    pub operator_multipliers: bool,
}

/// A displayed normalization: `display · J_k` has coefficient `coeff` at
/// `reference`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralScale {
    pub display: Q,
    pub reference: Monomial,
    pub coeff: Q,
}

/// `J_k` with `J_k = C_k` on solutions, and the multipliers proving
/// `J_k' = Σ_j L_kj(Ī_j) + Σ_i M_ki·(J_i − C_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralConstant {
    pub n: u32,
    pub k: u32,
    pub j: DiffPoly,
    pub multipliers: BTreeMap<u32, DiffOperator>,
    pub relations: BTreeMap<u32, DiffPoly>,
    /// Display prefactor: `J_k` is shown as `display · J_k`.
    pub display: Q,
    /// When `J_k` is a constant multiple of one symbol, `J_k = C_k` is used
    /// as the substitution `symbol -> image` in later searches.
    pub degenerate: Option<(Generator, DiffPoly)>,
    /// Indices of the conditions and of the earlier relations used.
    pub used_conditions: Vec<u32>,
    pub used_relations: Vec<u32>,
    /// Dimension of the nontrivial solution space found.
    pub alternatives: usize,
}

impl IntegralConstant {
    /// The relation `J_k − C_k`, which vanishes on solutions.
    pub fn relation(&self) -> DiffPoly {
        &self.j - &DiffPoly::var(self.n, Generator::c(self.k))
    }

    pub fn displayed(&self) -> DiffPoly {
        self.j.scale(&self.display)
    }

    /// Rescales `J` and every multiplier by `f`.
    fn rescale(&mut self, f: &Q) {
        self.j = self.j.scale(f);
        for l in self.multipliers.values_mut() {
            *l = l.scale(f);
        }
        for m in self.relations.values_mut() {
            *m = m.scale(f);
        }
    }

    /// Adds a constant to `J`; the derivative identity is unaffected.
    pub fn with_constant(mut self, c: &DiffPoly) -> Self {
        self.j += c;
        self
    }

    /// `J' − Σ L(Ī) − Σ M·R`, zero for a valid integral.
    pub fn residual(
        &self,
        conditions: &[(u32, DiffPoly)],
        known: &[IntegralConstant],
    ) -> Result<DiffPoly, ReductionError> {
        let mut r = self.j.derive();
        for (j, l) in &self.multipliers {
            let ij = lookup(conditions, *j)?;
            r -= &l.apply(ij);
        }
        for (i, m) in &self.relations {
            let rel = known
                .iter()
                .find(|c| c.k == *i)
                .ok_or_else(|| ReductionError::BadInput(format!("no integral J_{i}")))?
                .relation();
            r -= &(m * &rel);
        }
        Ok(r)
    }
}

fn lookup(conditions: &[(u32, DiffPoly)], j: u32) -> Result<&DiffPoly, ReductionError> {
    conditions
        .iter()
        .find(|(i, _)| *i == j)
        .map(|(_, p)| p)
        .ok_or_else(|| ReductionError::BadInput(format!("no condition Ī_{j}")))
}

/// Applies the degenerate substitutions of `known` and drops conditions
/// that become zero.
pub fn reduced_conditions(cs: &ConditionSet, known: &[IntegralConstant]) -> Vec<(u32, DiffPoly)> {
    let mut s = Substitution::identity(cs.n);
    for ic in known {
        if let Some((g, img)) = &ic.degenerate {
            s.insert(*g, img.clone()).expect("base generator");
        }
    }
    cs.conditions
        .iter()
        .map(|c| (c.k, s.apply(&c.poly)))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// Subsets of `items` ordered by size, then lexicographically.
fn subsets(items: &[u32]) -> Vec<Vec<u32>> {
    fn choose(items: &[u32], size: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            choose(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=items.len() {
        choose(items, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Products of `C_1..C_{k-1}` of weight `2(k+1)`: the constants an
/// integral `J_k` is only determined up to.
pub fn constant_monomials(n: u32, k: u32) -> Vec<Monomial> {
    let cs: Vec<Generator> = (1..k).map(Generator::c).collect();
    monomial_basis(n, 2 * (k as i64 + 1), &cs, 0)
}

/// Searches the integral `J_k` of post-ansatz conditions `cs`.
///
/// Condition subsets are tried by size and then lexicographically; for each
/// of them, subsets of the relations `J_i − C_i` of the non-degenerate
/// integrals in `known` are tried the same way. The first choice admitting
/// a `J_k` that is not a constant multiple of earlier relations wins.
pub fn search_integral(
    cs: &ConditionSet,
    k: u32,
    known: &[IntegralConstant],
    policy: &SearchPolicy,
    scale: Option<&IntegralScale>,
) -> Result<IntegralConstant, ReductionError> {
    let n = cs.n;
    for c in &cs.conditions {
        reject_params(&c.poly)?;
    }
    let conditions = reduced_conditions(cs, known);
    let bound = policy.bounds.deriv_bound;
    let exhausted = |reason: String| ReductionError::SearchExhausted { k, bound, reason };
    if k == 0 || k >= n {
        return Err(exhausted(format!("k must lie in 1..{n}")));
    }
    let jw = 2 * (k as i64 + 1);
    let dw = jw + 1;
    let relations: Vec<&IntegralConstant> = known
        .iter()
        .filter(|c| c.k < k && c.degenerate.is_none())
        .collect();
    let mut live = live_generators(conditions.iter().map(|(_, p)| p));
    live.retain(|g| !g.is_constant());
    let mut j_gens = live.clone();
    j_gens.extend((1..k).map(Generator::c));
    j_gens.extend(
        live_generators(conditions.iter().map(|(_, p)| p))
            .into_iter()
            .filter(|g| g.is_constant()),
    );
    j_gens.sort();
    j_gens.dedup();
    j_gens.retain(|g| *g != Generator::c(0));
    let j_basis: Vec<Monomial> = monomial_basis(n, jw, &j_gens, bound)
        .into_iter()
        .filter(|m| !m.is_constant())
        .collect();
    let j_cols: Vec<DiffPoly> = j_basis
        .iter()
        .map(|m| -DiffPoly::term(n, m.clone(), Q::one()).derive())
        .collect();
    // Nontrivial means outside the span of constants times earlier J_i
    // and of the ideal.
    let mut trivial_vectors: Vec<BTreeMap<usize, Q>> = Vec::new();
    for r in &relations {
        for c in monomial_basis(n, jw - 2 * (r.k as i64 + 1), &j_gens, 0) {
            if !c.is_constant() {
                continue;
            }
            let p = r.j.mul_monomial(&c);
            let v: BTreeMap<usize, Q> = j_basis
                .iter()
                .enumerate()
                .filter_map(|(i, m)| {
                    let x = p.coeff(m);
                    (!x.is_zero()).then_some((i, x))
                })
                .collect();
            trivial_vectors.push(v);
        }
    }
    // Elements of the ideal vanish on shell and are trivially conserved.
    let project = |p: &DiffPoly| -> Option<BTreeMap<usize, Q>> {
        let mut v = BTreeMap::new();
        for (m, x) in p.terms() {
            if m.is_constant() {
                continue;
            }
            let i = j_basis.binary_search(m).ok()?;
            v.insert(i, x.clone());
        }
        Some(v)
    };
    for (_, ij) in &conditions {
        let wj = ij.weight_of()?;
        let mut dij = ij.clone();
        for m in 0..=bound {
            if wj + m as i64 > jw {
                break;
            }
            for b in monomial_basis(n, jw - wj - m as i64, &live, bound) {
                if let Some(v) = project(&dij.mul_monomial(&b)) {
                    trivial_vectors.push(v);
                }
            }
            dij = dij.derive();
        }
    }
    let mut indices: Vec<u32> = conditions.iter().map(|(j, _)| *j).collect();
    indices.sort();
    let rel_indices: Vec<u32> = relations.iter().map(|r| r.k).collect();
    for subset in subsets(&indices).into_iter().skip(1) {
        for rel_subset in subsets(&rel_indices) {
            let mut columns: Vec<DiffPoly> = Vec::new();
            let mut l_keys: Vec<(u32, u32, Monomial)> = Vec::new();
            for &j in &subset {
                let ij = lookup(&conditions, j)?;
                let wj = ij.weight_of()?;
                let orders = if policy.operator_multipliers { 1 } else { 0 };
                let mut dij = ij.clone();
                for m in 0..=orders {
                    for b in monomial_basis(n, dw - wj - m as i64, &j_gens, bound) {
                        columns.push(dij.mul_monomial(&b));
                        l_keys.push((j, m, b));
                    }
                    dij = dij.derive();
                }
            }
            let mut m_keys: Vec<(u32, Monomial)> = Vec::new();
            for &i in &rel_subset {
                let rel = relations.iter().find(|r| r.k == i).unwrap().relation();
                for b in monomial_basis(n, dw - 2 * (i as i64 + 1), &j_gens, bound) {
                    columns.push(&rel * &DiffPoly::term(n, b.clone(), Q::one()));
                    m_keys.push((i, b));
                }
            }
            let offset = columns.len();
            columns.extend(j_cols.iter().cloned());
            let sys = column_system(&columns, &DiffPoly::zero(n));
            let mut found: Vec<BTreeMap<usize, Q>> = Vec::new();
            let mut span = LinearSystem::new(j_basis.len());
            let mut span_rank = 0;
            for v in &trivial_vectors {
                add_vector(&mut span, v);
            }
            let base_rank = span.rank();
            for v in sys.nullspace() {
                let proj: BTreeMap<usize, Q> = v
                    .iter()
                    .filter(|(c, _)| **c >= offset)
                    .map(|(c, x)| (c - offset, x.clone()))
                    .collect();
                if proj.is_empty() {
                    continue;
                }
                add_vector(&mut span, &proj);
                if span.rank() > base_rank + span_rank {
                    span_rank += 1;
                    found.push(v);
                }
            }
            let Some(v) = found.first() else {
                continue;
            };
            let mut j = DiffPoly::zero(n);
            let mut multipliers: BTreeMap<u32, DiffOperator> = BTreeMap::new();
            let mut rels: BTreeMap<u32, DiffPoly> = BTreeMap::new();
            for (c, x) in v {
                if *c < l_keys.len() {
                    let (jj, m, b) = &l_keys[*c];
                    multipliers
                        .entry(*jj)
                        .or_insert_with(|| DiffOperator::zero(n))
                        .add_term(*m, DiffPoly::term(n, b.clone(), x.clone()));
                } else if *c < offset {
                    let (i, b) = &m_keys[c - l_keys.len()];
                    rels.entry(*i)
                        .or_insert_with(|| DiffPoly::zero(n))
                        .add_term(b.clone(), x.clone());
                } else {
                    j.add_term(j_basis[c - offset].clone(), x.clone());
                }
            }
            let mut ic = IntegralConstant {
                n,
                k,
                j,
                multipliers,
                relations: rels,
                display: Q::one(),
                degenerate: None,
                used_conditions: subset.clone(),
                used_relations: rel_subset.clone(),
                alternatives: found.len(),
            };
            let (_, f) = ic.j.make_monic();
            ic.rescale(&f);
            if let Some(s) = scale {
                let at = ic.j.coeff(&s.reference);
                if at.is_zero() {
                    return Err(ReductionError::BadInput(format!(
                        "J_{k} has no {} term to normalize",
                        s.reference.plain()
                    )));
                }
                ic.rescale(&(s.coeff.clone() / (s.display.clone() * at)));
                ic.display = s.display.clone();
            }
            if ic.j.len() == 1 {
                let (m, c) = ic.j.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
                if let [(g, 1)] = m.factors() {
                    if g.order == 0 {
                        let img = DiffPoly::var(n, Generator::c(k)).scale(&(Q::one() / c));
                        ic.degenerate = Some((*g, img));
                    }
                }
            }
            let res = ic.residual(&conditions, known)?;
            if !res.is_zero() {
                return Err(ReductionError::CertificateMismatch(format!("J_{k}' residual {res}")));
            }
            return Ok(ic);
        }
    }
    Err(exhausted(format!(
        "no multiplicative multipliers over {} candidates make a total derivative",
        j_basis.len()
    )))
}

fn add_vector(sys: &mut LinearSystem, v: &BTreeMap<usize, Q>) {
    sys.add_equation(v.iter().map(|(c, x)| (*c, x.clone())), Q::zero());
}

/// Runs [`search_integral`] for `k = 1..N−1` in order.
pub fn search_all(
    cs: &ConditionSet,
    policy: &SearchPolicy,
    scales: &dyn Fn(u32) -> Option<IntegralScale>,
) -> Result<Vec<IntegralConstant>, ReductionError> {
    let mut known = Vec::new();
    for k in 1..cs.n {
        let ic = search_integral(cs, k, &known, policy, scales(k).as_ref())?;
        known.push(ic);
    }
    Ok(known)
}
