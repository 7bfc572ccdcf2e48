//! Linear ordinary differential operators with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::diffring::format::{latex, plain, PolyJson};
use crate::diffring::{DiffPoly, RingError, Substitution, Q};

/// `Σ a_i ∂^i` in standard form, coefficients to the left of the powers.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    n: u32,
    coeffs: BTreeMap<u32, DiffPoly>,
}

fn binomial(i: u32, j: u32) -> Q {
    let mut b = BigInt::one();
    for t in 0..j {
        b = b * BigInt::from(i - t) / BigInt::from(t + 1);
    }
    Q::from_integer(b)
}

impl DiffOperator {
    pub fn zero(n: u32) -> Self {
        DiffOperator {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// Multiplication by `a`.
    pub fn multiply(a: DiffPoly) -> Self {
        let n = a.ambient_n();
        DiffOperator::zero(n).with_term(0, a)
    }

    pub fn scalar(n: u32, c: Q) -> Self {
        DiffOperator::multiply(DiffPoly::constant(n, c))
    }

    pub fn identity(n: u32) -> Self {
        DiffOperator::scalar(n, Q::one())
    }

    /// `∂^i`.
    pub fn d_pow(n: u32, i: u32) -> Self {
        DiffOperator::zero(n).with_term(i, DiffPoly::one(n))
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, DiffPoly)>>(n: u32, iter: I) -> Self {
        let mut op = DiffOperator::zero(n);
        for (i, a) in iter {
            op.add_term(i, a);
        }
        op
    }

    pub fn with_term(mut self, i: u32, a: DiffPoly) -> Self {
        self.add_term(i, a);
        self
    }

    pub fn add_term(&mut self, i: u32, a: DiffPoly) {
        assert_eq!(a.ambient_n(), self.n, "ambient N mismatch");
        if a.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&i) {
            Some(old) => &old + &a,
            None => a,
        };
        if !sum.is_zero() {
            self.coeffs.insert(i, sum);
        }
    }

    pub fn ambient_n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coefficient(&self, i: u32) -> DiffPoly {
        self.coeffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| DiffPoly::zero(self.n))
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = (u32, &DiffPoly)> {
        self.coeffs.iter().map(|(&i, a)| (i, a))
    }

    fn check(&self, other: &DiffOperator) -> Result<(), RingError> {
        if self.n != other.n {
            return Err(RingError::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_compose(&self, other: &DiffOperator) -> Result<DiffOperator, RingError> {
        self.check(other)?;
        Ok(self.compose(other))
    }

    /// `self ∘ other`, using `∂^i∘b = Σ_l C(i,l) b^{(l)} ∂^{i-l}`.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        assert_eq!(self.n, other.n, "ambient N mismatch");
        let mut out = DiffOperator::zero(self.n);
        for (&j, b) in &other.coeffs {
            let mut db = b.clone();
            let max_i = self.order().unwrap_or(0);
            for l in 0..=max_i {
                for (&i, a) in self.coeffs.range(l..) {
                    out.add_term(i - l + j, (a * &db).scale(&binomial(i, l)));
                }
                db = db.derive();
                if db.is_zero() {
                    break;
                }
            }
        }
        out
    }

    /// Formal transpose `Σ a_i ∂^i -> Σ (-∂)^i ∘ a_i`.
    pub fn transpose(&self) -> DiffOperator {
        let mut out = DiffOperator::zero(self.n);
        for (&i, a) in &self.coeffs {
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            let mut da = a.clone();
            for l in 0..=i {
                out.add_term(i - l, da.scale(&(&sign * binomial(i, l))));
                da = da.derive();
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiffOperator {
        let mut acc = DiffOperator::identity(self.n);
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// Applies the operator to a function: `Σ a_i f^{(i)}`.
    pub fn apply(&self, f: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero(self.n);
        let mut df = f.clone();
        let mut k = 0;
        for (&i, a) in &self.coeffs {
            while k < i {
                df = df.derive();
                k += 1;
            }
            out += &(a * &df);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> DiffOperator {
        DiffOperator::from_coeffs(self.n, self.coeffs.iter().map(|(&i, a)| (i, a.scale(c))))
    }

    pub fn map_coeffs<F: FnMut(&DiffPoly) -> DiffPoly>(&self, mut f: F) -> DiffOperator {
        DiffOperator::from_coeffs(self.n, self.coeffs.iter().map(|(&i, a)| (i, f(a))))
    }

    pub fn substitute(&self, s: &Substitution) -> DiffOperator {
        self.map_coeffs(|a| s.apply(a))
    }

    /// Operator weight when every `a_i` has weight `ω - i`.
    pub fn weight_of(&self) -> Result<i64, RingError> {
        let mut found: Option<i64> = None;
        let mut offending = Vec::new();
        for (&i, a) in &self.coeffs {
            let w = a.weight_of()? + i as i64;
            match found {
                None => found = Some(w),
                Some(f) if f != w => offending.push((format!("order {i}"), w)),
                _ => {}
            }
        }
        if !offending.is_empty() {
            return Err(RingError::Inhomogeneous { offending });
        }
        found.ok_or(RingError::ZeroPolynomial)
    }

    pub fn plain(&self) -> String {
        self.render(plain, |i| match i {
            0 => String::new(),
            1 => "d".into(),
            _ => format!("d^{i}"),
        }, "*")
    }

    pub fn latex(&self) -> String {
        self.render(latex, |i| match i {
            0 => String::new(),
            1 => "\\del".into(),
            _ => format!("\\del^{{{i}}}"),
        }, "")
    }

    fn render(
        &self,
        fmt_poly: fn(&DiffPoly) -> String,
        fmt_d: impl Fn(u32) -> String,
        times: &str,
    ) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (&i, a)) in self.coeffs.iter().rev().enumerate() {
            let d = fmt_d(i);
            let (neg, body) = match a.as_constant() {
                Some(c) if c.abs().is_one() && i > 0 => (c.is_negative(), d),
                _ if a.len() == 1 => {
                    let (m, c) = a.terms().next().unwrap();
                    let single = DiffPoly::term(self.n, m.clone(), c.abs());
                    let t = fmt_poly(&single);
                    let body = if i == 0 { t } else { format!("{t}{times}{d}") };
                    (c.is_negative(), body)
                }
                _ => {
                    let t = format!("({})", fmt_poly(a));
                    let body = if i == 0 { t } else { format!("{t}{times}{d}") };
                    (false, body)
                }
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&OperatorJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<DiffOperator, RingError> {
        let j: OperatorJson =
            serde_json::from_str(s).map_err(|e| RingError::BadJson(e.to_string()))?;
        DiffOperator::try_from(&j)
    }
}

/// Canonical JSON: `{ambientN, coeffs: [{order, poly}]}`, ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    #[serde(rename = "ambientN")]
    pub ambient_n: u32,
    pub coeffs: Vec<OperatorCoeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorCoeff {
    pub order: u32,
    pub poly: PolyJson,
}

impl From<&DiffOperator> for OperatorJson {
    fn from(op: &DiffOperator) -> Self {
        OperatorJson {
            ambient_n: op.n,
            coeffs: op
                .coeffs
                .iter()
                .map(|(&i, a)| OperatorCoeff {
                    order: i,
                    poly: PolyJson::from(a),
                })
                .collect(),
        }
    }
}

impl TryFrom<&OperatorJson> for DiffOperator {
    type Error = RingError;

    fn try_from(j: &OperatorJson) -> Result<Self, RingError> {
        let mut op = DiffOperator::zero(j.ambient_n);
        for c in &j.coeffs {
            let (i, a) = (c.order, DiffPoly::try_from(&c.poly)?);
            if a.ambient_n() != j.ambient_n {
                return Err(RingError::AmbientMismatch {
                    left: j.ambient_n,
                    right: a.ambient_n(),
                });
            }
            op.add_term(i, a);
        }
        Ok(op)
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator[N={}]({})", self.n, self.plain())
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.plain())
    }
}

impl Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        assert_eq!(self.n, rhs.n, "ambient N mismatch");
        let mut out = self.clone();
        for (&i, a) in &rhs.coeffs {
            out.add_term(i, a.clone());
        }
        out
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &(-rhs)
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        self.scale(&-Q::one())
    }
}

impl Mul for &DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::parse;

    fn p(s: &str, n: u32) -> DiffPoly {
        parse(s, n).unwrap()
    }

    fn charge(n: u32) -> DiffOperator {
        let mut op = DiffOperator::d_pow(n, n);
        for k in 0..n {
            op.add_term(k, p(&format!("w{k}"), n));
        }
        op
    }

    #[test]
    fn leibniz_cases() {
        let d = DiffOperator::d_pow(2, 1);
        let w1 = DiffOperator::multiply(p("w1", 2));
        let got = d.compose(&w1);
        assert_eq!(got.coefficient(1), p("w1", 2));
        assert_eq!(got.coefficient(0), p("w1'", 2));
        let d2 = DiffOperator::d_pow(2, 2);
        let got = d2.compose(&DiffOperator::multiply(p("w0", 2)));
        assert_eq!(got.coefficient(2), p("w0", 2));
        assert_eq!(got.coefficient(1), p("2*w0'", 2));
        assert_eq!(got.coefficient(0), p("w0''", 2));
    }

    #[test]
    fn transpose_of_two_fold_charge() {
        let t = charge(2).transpose();
        assert_eq!(t.coefficient(2), p("1", 2));
        assert_eq!(t.coefficient(1), p("-w1", 2));
        assert_eq!(t.coefficient(0), p("w0 - w1'", 2));
        assert_eq!(t.transpose(), charge(2));
    }

    #[test]
    fn transpose_of_three_fold_charge() {
        let t = charge(3).transpose();
        assert_eq!(t.coefficient(3), p("-1", 3));
        assert_eq!(t.coefficient(2), p("w2", 3));
        assert_eq!(t.coefficient(1), p("-w1 + 2*w2'", 3));
        assert_eq!(t.coefficient(0), p("w0 - w1' + w2''", 3));
    }

    #[test]
    fn printing_and_json() {
        let op = charge(2);
        assert_eq!(op.plain(), "d^2 + w1*d + w0");
        assert_eq!(op.latex(), "\\del^{2} + w_{1}\\del + w_{0}");
        let back = DiffOperator::from_json(&op.to_json()).unwrap();
        assert_eq!(back, op);
        assert_eq!(DiffOperator::zero(2).coefficient(3), DiffPoly::zero(2));
    }

    #[test]
    fn apply_matches_composition_on_functions() {
        let op = charge(2);
        let f = p("u0", 2);
        let direct = op.apply(&f);
        let via = op.compose(&DiffOperator::multiply(f)).coefficient(0);
        assert_eq!(direct, via);
    }
}
