use std::collections::BTreeSet;

use crate::diffring::{DiffPoly, Family, Generator, Monomial};

/// Base symbols (derivative order zero) that occur in `polys`, parameters
/// excluded.
pub fn live_generators<'a, I: IntoIterator<Item = &'a DiffPoly>>(polys: I) -> Vec<Generator> {
    let mut out = BTreeSet::new();
    for p in polys {
        for g in p.generators() {
            if g.family != Family::Param {
                out.insert(g.base());
            }
        }
    }
    out.into_iter().collect()
}

/// All monomials of exactly `weight` over `allowed` base symbols and their
/// derivatives up to `deriv_bound`, in ascending canonical order.
///
/// Constants carry no derivatives; weight-zero symbols are skipped since
/// they would make the set infinite.
pub fn monomial_basis(n: u32, weight: i64, allowed: &[Generator], deriv_bound: u32) -> Vec<Monomial> {
    if weight < 0 {
        return Vec::new();
    }
    let mut atoms: Vec<(Generator, i64)> = Vec::new();
    for g in allowed {
        let g = g.base();
        let max_order = if g.is_constant() { 0 } else { deriv_bound };
        for m in 0..=max_order {
            let x = g.with_order(m);
            match x.weight(n) {
                Some(w) if w > 0 && w <= weight => atoms.push((x, w)),
                _ => {}
            }
        }
    }
    atoms.sort();
    atoms.dedup();
    let mut out = Vec::new();
    let mut current: Vec<(Generator, u32)> = Vec::new();
    extend(&atoms, 0, weight, &mut current, &mut out);
    out.sort();
    out
}

fn extend(
    atoms: &[(Generator, i64)],
    start: usize,
    remaining: i64,
    current: &mut Vec<(Generator, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_factors(current.iter().copied()));
        return;
    }
    for i in start..atoms.len() {
        let (g, w) = atoms[i];
        let mut e = 1;
        while w * e as i64 <= remaining {
            current.push((g, e));
            extend(atoms, i + 1, remaining - w * e as i64, current, out);
            current.pop();
            e += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        let b = monomial_basis(2, 1, &[Generator::w(1)], 12);
        assert_eq!(b, vec![Monomial::var(Generator::w(1))]);
        let b = monomial_basis(3, 2, &[Generator::w(2), Generator::u(1)], 12);
        let names: Vec<String> = b.iter().map(|m| m.plain()).collect();
        assert_eq!(names, vec!["w2^2", "w2'", "u1"]);
        assert_eq!(monomial_basis(2, 0, &[Generator::w(1)], 12), vec![Monomial::one()]);
    }
}
