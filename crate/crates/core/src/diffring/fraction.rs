use std::fmt;

use num_traits::{One, Zero};

use super::generator::Generator;
use super::monomial::Monomial;
use super::poly::DiffPoly;
use super::Q;

/// A polynomial over a monomial denominator.
///
/// This is only the localization at monomials, enough to state the
/// closed forms whose denominators are powers of single symbols and to
/// clear them again. It is not a fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    num: DiffPoly,
    den: Monomial,
}

fn monomial_gcd(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::from_factors(
        a.factors()
            .iter()
            .filter_map(|&(g, e)| {
                let f = b.exponent(g).min(e);
                (f > 0).then_some((g, f))
            }),
    )
}

fn monomial_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    let g = monomial_gcd(a, b);
    a.mul(b).div(&g).expect("gcd divides product")
}

impl Fraction {
    pub fn from_poly(p: DiffPoly) -> Self {
        Fraction {
            num: p,
            den: Monomial::one(),
        }
    }

    pub fn new(num: DiffPoly, den: Monomial) -> Self {
        Fraction { num, den }.reduced()
    }

    pub fn numerator(&self) -> &DiffPoly {
        &self.num
    }

    pub fn denominator(&self) -> &Monomial {
        &self.den
    }

    fn n(&self) -> u32 {
        self.num.ambient_n()
    }

    fn reduced(self) -> Self {
        if self.num.is_zero() {
            return Fraction {
                num: self.num,
                den: Monomial::one(),
            };
        }
        let mut g = self.den.clone();
        for (m, _) in self.num.terms() {
            g = monomial_gcd(&g, m);
            if g.is_one() {
                break;
            }
        }
        if g.is_one() {
            return self;
        }
        let num = DiffPoly::from_terms(
            self.n(),
            self.num.terms().map(|(m, c)| (m.div(&g).unwrap(), c.clone())),
        );
        Fraction {
            num,
            den: self.den.div(&g).unwrap(),
        }
    }

    fn lift(&self, den: &Monomial) -> DiffPoly {
        let f = den.div(&self.den).expect("lcm is a multiple");
        self.num.mul_monomial(&f)
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        let den = monomial_lcm(&self.den, &other.den);
        Fraction::new(&self.lift(&den) + &other.lift(&den), den)
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Fraction {
        Fraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction::new(&self.num * &other.num, self.den.mul(&other.den))
    }

    /// Division by a single term `c·m`; `None` for any other divisor.
    pub fn div_by_term(&self, other: &Fraction) -> Option<Fraction> {
        if other.num.len() != 1 {
            return None;
        }
        let (m, c) = other.num.terms().next().unwrap();
        if c.is_zero() {
            return None;
        }
        let num = self
            .num
            .scale(&(Q::one() / c.clone()))
            .mul_monomial(&other.den);
        Some(Fraction::new(num, self.den.mul(m)))
    }

    /// Quotient rule with the denominator kept as a monomial power.
    pub fn derive(&self) -> Fraction {
        if self.den.is_one() {
            return Fraction::from_poly(self.num.derive());
        }
        let n = self.n();
        let den_poly = DiffPoly::term(n, self.den.clone(), Q::one());
        let top = &self.num.derive().mul_monomial(&self.den) - &(&self.num * &den_poly.derive());
        Fraction::new(top, self.den.mul(&self.den))
    }

    /// Substitutes `g -> image` for a base generator, including all of its
    /// derivatives that occur.
    pub fn substitute_generator(&self, g: Generator, image: &Fraction) -> Fraction {
        let n = self.n();
        let mut images: Vec<Fraction> = vec![image.clone()];
        let image_at = |order: u32, images: &mut Vec<Fraction>| -> Fraction {
            while images.len() <= order as usize {
                let next = images.last().unwrap().derive();
                images.push(next);
            }
            images[order as usize].clone()
        };
        let subst_poly = |p: &DiffPoly, images: &mut Vec<Fraction>| -> Fraction {
            let mut acc = Fraction::from_poly(DiffPoly::zero(n));
            for (m, c) in p.terms() {
                let mut t = Fraction::from_poly(DiffPoly::constant(n, c.clone()));
                let mut kept = Vec::new();
                for &(x, e) in m.factors() {
                    if x.base() == g.base() {
                        let img = image_at(x.order, images);
                        for _ in 0..e {
                            t = t.mul(&img);
                        }
                    } else {
                        kept.push((x, e));
                    }
                }
                t = t.mul(&Fraction::from_poly(DiffPoly::term(
                    n,
                    Monomial::from_factors(kept),
                    Q::one(),
                )));
                acc = acc.add(&t);
            }
            acc
        };
        let top = subst_poly(&self.num, &mut images);
        // Denominator factors in `g` are substituted too.
        let den = Fraction::from_poly(DiffPoly::term(n, self.den.clone(), Q::one()));
        let bottom = subst_poly(den.numerator(), &mut images);
        if bottom == den {
            return top.div_by_term(&den).unwrap();
        }
        match top.div_by_term(&bottom) {
            Some(f) => f,
            None => panic!("substitution produced a non-monomial denominator"),
        }
    }

    /// Multiplies through by `den`; `None` unless `den` is a multiple of the
    /// reduced denominator.
    pub fn clear(&self, den: &Monomial) -> Option<DiffPoly> {
        let f = den.div(&self.den)?;
        Some(self.num.mul_monomial(&f))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::parse::parse_fraction;

    #[test]
    fn sums_share_denominators() {
        let a = parse_fraction("1/w1 + 1/w1^2", 2).unwrap();
        assert_eq!(a.denominator().plain(), "w1^2");
        let cleared = a.clear(&Monomial::pow(Generator::w(1), 2)).unwrap();
        assert_eq!(cleared.to_string(), "w1 + 1");
    }

    #[test]
    fn quotient_rule() {
        // (1/w1)' = -w1'/w1^2
        let f = parse_fraction("1/w1", 2).unwrap().derive();
        let g = parse_fraction("-w1'/w1^2", 2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn substitution_of_a_fraction() {
        // w2 -> -u0'/(2u1'), then w2' follows the quotient rule.
        let target = parse_fraction("w2'", 3).unwrap();
        let img = parse_fraction("-u0'/(2u1')", 3).unwrap();
        let out = target.substitute_generator(Generator::w(2), &img);
        let expected = parse_fraction("-u0''/(2u1') + u0'u1''/(2u1'^2)", 3).unwrap();
        assert_eq!(out, expected);
    }
}
