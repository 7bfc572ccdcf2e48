use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::generator::{Family, Generator};
use super::monomial::Monomial;
use super::{Q, RingError};

/// Sparse polynomial with exact rational coefficients in the derivative
/// symbols of one ambient `N`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    n: u32,
    terms: BTreeMap<Monomial, Q>,
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

impl DiffPoly {
    pub fn zero(n: u32) -> Self {
        DiffPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        DiffPoly::constant(n, Q::one())
    }

    pub fn constant(n: u32, c: Q) -> Self {
        DiffPoly::term(n, Monomial::one(), c)
    }

    pub fn int(n: u32, c: i64) -> Self {
        DiffPoly::constant(n, qi(c))
    }

    pub fn var(n: u32, g: Generator) -> Self {
        DiffPoly::term(n, Monomial::var(g), Q::one())
    }

    pub fn term(n: u32, m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { n, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(n: u32, iter: I) -> Self {
        let mut p = DiffPoly::zero(n);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient_n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_n(&self, other: &DiffPoly) -> Result<(), RingError> {
        if self.n != other.n {
            Err(RingError::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &DiffPoly) -> Result<DiffPoly, RingError> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffPoly) -> Result<DiffPoly, RingError> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &DiffPoly) -> Result<DiffPoly, RingError> {
        self.check_n(other)?;
        let mut out = DiffPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(self.n);
        }
        DiffPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> DiffPoly {
        DiffPoly {
            n: self.n,
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut acc = DiffPoly::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The ring derivation: raises every derivative order by one, kills
    /// constants, and obeys the Leibniz rule.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero(self.n);
        for (m, c) in &self.terms {
            for (idx, &(g, e)) in m.factors().iter().enumerate() {
                if g.is_constant() {
                    continue;
                }
                let rest = m.without_one(idx);
                let dm = rest.mul(&Monomial::var(g.with_order(g.order + 1)));
                out.add_term(dm, c * Q::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn derive_n(&self, times: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..times {
            p = p.derive();
        }
        p
    }

    /// Common weight of all monomials.
    pub fn weight_of(&self) -> Result<i64, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroPolynomial);
        }
        let mut seen: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for m in self.terms.keys() {
            let w = m.weight(self.n).ok_or_else(|| RingError::OutOfRange {
                symbol: m.plain(),
                n: self.n,
            })?;
            seen.entry(w).or_default().push(m.plain());
        }
        if seen.len() == 1 {
            Ok(*seen.keys().next().unwrap())
        } else {
            Err(RingError::Inhomogeneous {
                offending: seen
                    .into_iter()
                    .flat_map(|(w, ms)| ms.into_iter().map(move |m| (m, w)))
                    .collect(),
            })
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight_of().is_ok()
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|f| f.0))
            .collect()
    }

    pub fn has_family(&self, family: Family) -> bool {
        self.generators().iter().any(|g| g.family == family)
    }

    /// Groups terms by their parameter-free part: returns
    /// `parameter-free monomial -> polynomial in the parameters`.
    pub fn collect_by_non_params(&self) -> BTreeMap<Monomial, DiffPoly> {
        let mut out: BTreeMap<Monomial, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (p, rest) = m.split_params();
            out.entry(rest)
                .or_insert_with(|| DiffPoly::zero(self.n))
                .add_term(p, c.clone());
        }
        out
    }

    /// Groups terms by their constant (C and parameter) part.
    pub fn collect_by_constants(&self) -> BTreeMap<Monomial, DiffPoly> {
        let mut out: BTreeMap<Monomial, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (cst, rest) = m.split_constant();
            out.entry(cst)
                .or_insert_with(|| DiffPoly::zero(self.n))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Terms in canonical printing order (descending graded-lex).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0, self.n));
        v
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Rescales so that the leading (canonically largest) monomial has
    /// coefficient one. Returns the factor applied.
    pub fn make_monic(&self) -> (DiffPoly, Q) {
        match self.sorted_terms().first() {
            None => (self.clone(), Q::one()),
            Some((_, c)) => {
                let f = Q::one() / (*c).clone();
                (self.scale(&f), f)
            }
        }
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly[N={}]({})", self.n, super::format::plain(self))
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::plain(self))
    }
}

fn expect_ok<T>(r: Result<T, RingError>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

impl<'a> Add<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &'a DiffPoly) -> DiffPoly {
        expect_ok(self.checked_add(rhs))
    }
}

impl<'a> Sub<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &'a DiffPoly) -> DiffPoly {
        expect_ok(self.checked_sub(rhs))
    }
}

impl<'a> Mul<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &'a DiffPoly) -> DiffPoly {
        expect_ok(self.checked_mul(rhs))
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += &rhs;
        self
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= &rhs;
        self
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        expect_ok(self.check_n(rhs));
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        expect_ok(self.check_n(rhs));
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.scale(&-Q::one())
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        (&self).neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: u32, m: u32) -> DiffPoly {
        DiffPoly::var(2, Generator::w(k).with_order(m))
    }

    #[test]
    fn additive_identity_and_inverse() {
        let a = w(1, 0);
        assert_eq!(&a + &DiffPoly::zero(2), a);
        assert!((&a - &a).is_zero());
        assert!((&a + &a.scale(&qi(-1))).is_zero());
    }

    #[test]
    fn like_terms_merge() {
        let m = &w(1, 0) * &w(0, 0);
        let s = &m.scale(&qi(2)) + &m.scale(&qi(3));
        assert_eq!(s, m.scale(&qi(5)));
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        let p = &w(1, 2) + &(&w(0, 0) * &w(1, 1));
        assert_eq!(&DiffPoly::one(2) * &p, p);
    }

    #[test]
    fn derivation_leibniz_and_constants() {
        let p = &w(1, 0) * &w(0, 0);
        let expected = &(&w(1, 1) * &w(0, 0)) + &(&w(1, 0) * &w(0, 1));
        assert_eq!(p.derive(), expected);
        assert!(DiffPoly::var(2, Generator::c(1)).derive().is_zero());
        assert_eq!(w(1, 0).derive(), w(1, 1));
    }

    #[test]
    fn weight_reports() {
        let p = &(&w(1, 0) * &w(1, 0)) * &w(1, 1);
        assert_eq!(p.weight_of().unwrap(), 4);
        let bad = &w(1, 0) + &(&w(1, 0) * &w(1, 0));
        match bad.weight_of() {
            Err(RingError::Inhomogeneous { offending }) => assert_eq!(offending.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(DiffPoly::zero(2).weight_of(), Err(RingError::ZeroPolynomial)));
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = DiffPoly::var(2, Generator::w(1));
        let b = DiffPoly::var(3, Generator::w(1));
        assert!(matches!(
            a.checked_add(&b),
            Err(RingError::AmbientMismatch { left: 2, right: 3 })
        ));
        assert!(a.checked_mul(&b).is_err());
    }
}
