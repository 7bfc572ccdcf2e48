use std::cmp::Ordering;
use std::fmt;

use super::generator::Generator;

/// A power product of generators. Exponents are positive and the factors
/// are kept sorted by the canonical generator order; the empty product is
/// the unit monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(g: Generator) -> Self {
        Monomial {
            factors: vec![(g, 1)],
        }
    }

    pub fn pow(g: Generator, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial {
                factors: vec![(g, exp)],
            }
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and
    /// dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Generator, u32)>>(iter: I) -> Self {
        let mut factors: Vec<(Generator, u32)> = iter.into_iter().filter(|f| f.1 > 0).collect();
        factors.sort_by_key(|f| f.0);
        let mut merged: Vec<(Generator, u32)> = Vec::with_capacity(factors.len());
        for (g, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == g => last.1 += e,
                _ => merged.push((g, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.factors
            .binary_search_by_key(&g, |f| f.0)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(g, e) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 < g {
                return None;
            }
            if j < other.factors.len() && other.factors[j].0 == g {
                let d = other.factors[j].1;
                if d > e {
                    return None;
                }
                if e > d {
                    out.push((g, e - d));
                }
                j += 1;
            } else {
                out.push((g, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Removes one power of the factor at position `idx`.
    pub(crate) fn without_one(&self, idx: usize) -> Monomial {
        let mut factors = self.factors.clone();
        if factors[idx].1 == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        Monomial { factors }
    }

    /// `None` if any factor is outside the ring for ambient `n`.
    pub fn weight(&self, n: u32) -> Option<i64> {
        let mut total = 0;
        for &(g, e) in &self.factors {
            total += g.weight(n)? * e as i64;
        }
        Some(total)
    }

    /// True when every factor is a constant (C_k or a parameter); such
    /// monomials span the kernel of the derivation.
    pub fn is_constant(&self) -> bool {
        self.factors.iter().all(|f| f.0.is_constant())
    }

    /// Splits into the constant part (C and parameter factors) and the rest.
    pub fn split_constant(&self) -> (Monomial, Monomial) {
        let (c, v): (Vec<_>, Vec<_>) = self.factors.iter().partition(|f| f.0.is_constant());
        (Monomial { factors: c }, Monomial { factors: v })
    }

    /// Splits off the parameter (weight-0) factors.
    pub fn split_params(&self) -> (Monomial, Monomial) {
        let (p, v): (Vec<_>, Vec<_>) = self
            .factors
            .iter()
            .partition(|f| f.0.family == super::generator::Family::Param);
        (Monomial { factors: p }, Monomial { factors: v })
    }

    pub fn max_order(&self) -> u32 {
        self.factors.iter().map(|f| f.0.order).max().unwrap_or(0)
    }

    /// Graded-lexicographic comparison: weight first, then the exponent
    /// vectors compared from the largest generator downward.
    pub fn grlex_cmp(&self, other: &Monomial, n: u32) -> Ordering {
        let wa = self.weight(n).unwrap_or(i64::MIN);
        let wb = other.weight(n).unwrap_or(i64::MIN);
        wa.cmp(&wb).then_with(|| {
            let a = self.factors.iter().rev();
            let b = other.factors.iter().rev();
            for (x, y) in a.zip(b) {
                let c = x.0.cmp(&y.0).then(x.1.cmp(&y.1));
                if c != Ordering::Equal {
                    return c;
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }

    pub fn plain(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    g.plain()
                } else {
                    format!("{}^{}", g.plain(), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn latex(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    g.latex()
                } else {
                    format!("({})^{{{}}}", g.latex(), e)
                }
            })
            .collect::<String>()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.plain())
    }
}
