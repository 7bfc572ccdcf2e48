//! Choosing transformation parameters that remove target monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diffring::{DiffPoly, Generator, Monomial, Substitution, Q};

use super::ansatz::{parameter_names, ParamAssignment};
use super::SusyError;

/// One component of a solution set.
///
/// Each solved parameter is a polynomial in the `free` ones; any values for
/// the free parameters give a solution. With no free parameters this is a
/// single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub n: u32,
    pub free: Vec<Generator>,
    pub solved: BTreeMap<Generator, DiffPoly>,
}

impl Branch {
    pub fn is_point(&self) -> bool {
        self.free.is_empty()
    }

    /// Every solved parameter is affine in the free ones.
    pub fn is_affine(&self) -> bool {
        self.solved
            .values()
            .all(|p| p.terms().all(|(m, _)| m.degree() <= 1))
    }

    /// Fixes the free parameters from `free_values`; missing ones become 0.
    pub fn instantiate(&self, free_values: &ParamAssignment) -> Option<ParamAssignment> {
        let mut s = Substitution::identity(self.n);
        let mut out = ParamAssignment::new();
        for g in &self.free {
            let v = free_values.get(g).cloned().unwrap_or_else(Q::zero);
            s = s.with_value(*g, v.clone()).ok()?;
            out.insert(*g, v);
        }
        for (g, p) in &self.solved {
            out.insert(*g, s.apply(p).as_constant()?);
        }
        Some(out)
    }

    /// True when `a` assigns every parameter and lies on this branch.
    pub fn contains(&self, a: &ParamAssignment) -> bool {
        a.len() == self.free.len() + self.solved.len()
            && self.instantiate(a).as_ref() == Some(a)
    }
}

/// The full solution set of a target system as a union of branches, in a
/// deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSolution {
    pub branches: Vec<Branch>,
}

impl ParamSolution {
    /// The unique solution, when the set is a single point.
    pub fn point(&self) -> Option<ParamAssignment> {
        match self.branches.as_slice() {
            [b] if b.is_point() => b.instantiate(&ParamAssignment::new()),
            _ => None,
        }
    }

    /// The isolated points among the branches.
    pub fn points(&self) -> Vec<ParamAssignment> {
        self.branches
            .iter()
            .filter(|b| b.is_point())
            .filter_map(|b| b.instantiate(&ParamAssignment::new()))
            .collect()
    }

    pub fn contains(&self, a: &ParamAssignment) -> bool {
        self.branches.iter().any(|b| b.contains(a))
    }
}

/// Coefficient of `target` (a parameter-free monomial) in `p`, as a
/// polynomial in the parameters.
pub fn parameter_coefficient(p: &DiffPoly, target: &Monomial) -> DiffPoly {
    p.collect_by_non_params()
        .remove(target)
        .unwrap_or_else(|| DiffPoly::zero(p.ambient_n()))
}

/// Finds an unknown of `e` occurring only in degree-one terms with a
/// constant coefficient, preferring the largest one, and returns it with its
/// value as a polynomial in the remaining unknowns.
fn isolate(e: &DiffPoly) -> Option<(Generator, DiffPoly)> {
    let n = e.ambient_n();
    let mut candidates: Vec<Generator> = e.generators().into_iter().collect();
    candidates.reverse();
    for g in candidates {
        let mut lead = Q::zero();
        let mut rest = DiffPoly::zero(n);
        let mut ok = true;
        for (m, c) in e.terms() {
            match m.exponent(g) {
                0 => rest.add_term(m.clone(), c.clone()),
                1 if m.degree() == 1 => lead += c,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && !lead.is_zero() {
            return Some((g, rest.scale(&(-Q::one() / lead))));
        }
    }
    None
}

/// Rational roots of a univariate polynomial given by its coefficients in
/// increasing degree, or `None` if it has a root outside Q.
fn rational_roots(coeffs: &[Q]) -> Option<Vec<Q>> {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut poly: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let mut roots = Vec::new();
    if poly.iter().take_while(|c| c.is_zero()).count() > 0 {
        roots.push(Q::zero());
        let z = poly.iter().take_while(|c| c.is_zero()).count();
        poly.drain(..z);
    }
    let divisors = |v: &BigInt| -> Vec<BigInt> {
        let v = v.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= v {
            if (&v % &d).is_zero() {
                out.push(d.clone());
                out.push(&v / &d);
            }
            d += 1;
        }
        out
    };
    loop {
        if poly.len() <= 1 {
            return Some(roots);
        }
        let (a0, an) = (&poly[0], poly.last().unwrap());
        let mut found = None;
        'search: for p in divisors(a0) {
            for q in divisors(an) {
                for r in [Q::new(p.clone(), q.clone()), -Q::new(p.clone(), q.clone())] {
                    let v = poly
                        .iter()
                        .rev()
                        .fold(Q::zero(), |acc, c| acc * &r + Q::from_integer(c.clone()));
                    if v.is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let r = found?;
        // Divide by (q x - p) with r = p/q in lowest terms.
        let (p, q) = (r.numer().clone(), r.denom().clone());
        let mut quotient = vec![BigInt::zero(); poly.len() - 1];
        let mut carry = BigInt::zero();
        for i in (1..poly.len()).rev() {
            let c = &poly[i] + &carry;
            quotient[i - 1] = &c / &q;
            carry = &quotient[i - 1] * &p;
        }
        poly = quotient;
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
}

/// A univariate equation in its single unknown, split into its roots.
fn split_univariate(e: &DiffPoly) -> Option<(Generator, Vec<Q>)> {
    let gens = e.generators();
    if gens.len() != 1 {
        return None;
    }
    let g = *gens.iter().next().unwrap();
    let deg = e.terms().map(|(m, _)| m.exponent(g)).max()? as usize;
    let mut coeffs = vec![Q::zero(); deg + 1];
    for (m, c) in e.terms() {
        coeffs[m.exponent(g) as usize] += c;
    }
    let mut roots = rational_roots(&coeffs)?;
    roots.sort();
    Some((g, roots))
}

fn eliminate(
    equations: &mut [DiffPoly],
    solved: &mut BTreeMap<Generator, DiffPoly>,
    g: Generator,
    value: DiffPoly,
) -> Result<(), SusyError> {
    let s = Substitution::identity(value.ambient_n()).with(g, value.clone())?;
    for e in equations.iter_mut() {
        *e = s.apply(e);
    }
    for v in solved.values_mut() {
        *v = s.apply(v);
    }
    solved.insert(g, value);
    Ok(())
}

fn solve_branch(
    params: &[Generator],
    mut equations: Vec<DiffPoly>,
    mut solved: BTreeMap<Generator, DiffPoly>,
    out: &mut Vec<Branch>,
) -> Result<(), SusyError> {
    loop {
        equations.retain(|e| !e.is_zero());
        if let Some(bad) = equations.iter().find(|e| e.as_constant().is_some()) {
            return Err(SusyError::Infeasible(format!("{bad} = 0")));
        }
        let Some(first) = equations.first() else {
            break;
        };
        let n = first.ambient_n();
        let linear = |e: &DiffPoly| e.terms().all(|(m, _)| m.degree() <= 1);
        let pick = equations
            .iter()
            .enumerate()
            .filter(|(_, e)| linear(e))
            .chain(equations.iter().enumerate().filter(|(_, e)| !linear(e)))
            .find_map(|(i, e)| isolate(e).map(|s| (i, s)));
        if let Some((i, (g, value))) = pick {
            equations.remove(i);
            eliminate(&mut equations, &mut solved, g, value)?;
            continue;
        }
        let split = equations
            .iter()
            .enumerate()
            .find_map(|(i, e)| split_univariate(e).map(|s| (i, s)));
        let Some((i, (g, roots))) = split else {
            return Err(SusyError::Nonlinear(format!("{} = 0", equations[0])));
        };
        equations.remove(i);
        for r in roots {
            let mut eqs = equations.clone();
            let mut sol = solved.clone();
            eliminate(&mut eqs, &mut sol, g, DiffPoly::constant(n, r))?;
            match solve_branch(params, eqs, sol, out) {
                Ok(()) | Err(SusyError::Infeasible(_)) => {}
                Err(e) => return Err(e),
            }
        }
        return Ok(());
    }
    let free = params
        .iter()
        .copied()
        .filter(|g| !solved.contains_key(g))
        .collect();
    out.push(Branch { n: 0, free, solved });
    Ok(())
}

/// Solves `coeff(Ī_k, m) = 0` for every target `(k, m)` of the transformed
/// conditions `conditions`, whose parameters are symbolic.
///
/// Equations are eliminated one unknown at a time. Linear equations go
/// first; a nonlinear equation is used once some unknown occurs in it only
/// linearly. A leftover equation in a single unknown splits the solution
/// set at its rational roots.
pub fn solve_parameters(
    n: u32,
    conditions: &[(u32, DiffPoly)],
    targets: &[(u32, Monomial)],
) -> Result<ParamSolution, SusyError> {
    let params = parameter_names(n)?;
    let mut equations: Vec<DiffPoly> = Vec::new();
    for (k, m) in targets {
        let p = conditions
            .iter()
            .find(|(j, _)| j == k)
            .map(|(_, p)| p)
            .ok_or_else(|| SusyError::ShapeMismatch(format!("no condition with index {k}")))?;
        equations.push(parameter_coefficient(p, m));
    }
    let mut branches = Vec::new();
    solve_branch(&params, equations, BTreeMap::new(), &mut branches)?;
    if branches.is_empty() {
        return Err(SusyError::Infeasible("every branch is inconsistent".into()));
    }
    for b in branches.iter_mut() {
        b.n = n;
    }
    Ok(ParamSolution { branches })
}
