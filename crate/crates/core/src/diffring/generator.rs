use std::fmt;

/// Symbol families of the differential polynomial ring.
///
/// The declaration order is the canonical family order used everywhere
/// (monomial ordering, printing, basis enumeration).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    W,
    U,
    VPlus,
    VMinus,
    C,
    Param,
}

/// Dimensionless parameter names. The kind is folded into the generator
/// index so that `Generator` stays a flat `(family, index, order)` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamKind {
    Alpha,
    Beta,
    Gamma,
}

const PARAM_STRIDE: u32 = 1000;

impl ParamKind {
    pub fn name(self) -> &'static str {
        match self {
            ParamKind::Alpha => "alpha",
            ParamKind::Beta => "beta",
            ParamKind::Gamma => "gamma",
        }
    }

    fn latex(self) -> &'static str {
        match self {
            ParamKind::Alpha => "\\alpha",
            ParamKind::Beta => "\\beta",
            ParamKind::Gamma => "\\gamma",
        }
    }

    fn from_code(code: u32) -> ParamKind {
        match code / PARAM_STRIDE {
            0 => ParamKind::Alpha,
            1 => ParamKind::Beta,
            _ => ParamKind::Gamma,
        }
    }

    fn base(self) -> u32 {
        match self {
            ParamKind::Alpha => 0,
            ParamKind::Beta => PARAM_STRIDE,
            ParamKind::Gamma => 2 * PARAM_STRIDE,
        }
    }
}

/// A derivative symbol `x^{(m)}`: family, index and derivative order.
///
/// Ordering is lexicographic on `(family, index, order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub family: Family,
    pub index: u32,
    pub order: u32,
}

impl Generator {
    pub const fn new(family: Family, index: u32, order: u32) -> Self {
        Generator {
            family,
            index,
            order,
        }
    }

    pub const fn w(index: u32) -> Self {
        Generator::new(Family::W, index, 0)
    }

    pub const fn u(index: u32) -> Self {
        Generator::new(Family::U, index, 0)
    }

    pub const fn v_plus() -> Self {
        Generator::new(Family::VPlus, 0, 0)
    }

    pub const fn v_minus() -> Self {
        Generator::new(Family::VMinus, 0, 0)
    }

    pub const fn c(index: u32) -> Self {
        Generator::new(Family::C, index, 0)
    }

    pub fn param(kind: ParamKind, index: u32) -> Self {
        Generator::new(Family::Param, kind.base() + index, 0)
    }

    pub fn with_order(self, order: u32) -> Self {
        Generator { order, ..self }
    }

    pub fn base(self) -> Self {
        self.with_order(0)
    }

    /// Constants (C_k and dimensionless parameters) are annihilated by the
    /// derivation and never carry a derivative order.
    pub fn is_constant(self) -> bool {
        matches!(self.family, Family::C | Family::Param)
    }

    pub fn param_kind(self) -> Option<(ParamKind, u32)> {
        if self.family == Family::Param {
            let kind = ParamKind::from_code(self.index);
            Some((kind, self.index - kind.base()))
        } else {
            None
        }
    }

    /// Inverse-length weight for ambient `n`. `None` when the symbol is not
    /// part of the ring for that `n` (e.g. `w_k` with `k >= n`).
    pub fn weight(self, n: u32) -> Option<i64> {
        let m = self.order as i64;
        match self.family {
            Family::W | Family::U => {
                if self.index < n {
                    Some(n as i64 - self.index as i64 + m)
                } else {
                    None
                }
            }
            Family::VPlus | Family::VMinus => Some(2 + m),
            Family::C => Some(2 * (self.index as i64 + 1)),
            Family::Param => Some(0),
        }
    }

    /// Plain-text rendering, e.g. `w1''`, `V+`, `C0`, `alpha1`.
    pub fn plain(self) -> String {
        let mut s = self.base_plain();
        for _ in 0..self.order {
            s.push('\'');
        }
        s
    }

    fn base_plain(self) -> String {
        match self.family {
            Family::W => format!("w{}", self.index),
            Family::U => format!("u{}", self.index),
            Family::VPlus => "V+".to_string(),
            Family::VMinus => "V-".to_string(),
            Family::C => format!("C{}", self.index),
            Family::Param => {
                let (kind, k) = self.param_kind().unwrap();
                format!("{}{}", kind.name(), k)
            }
        }
    }

    /// LaTeX rendering in prime notation, e.g. `w'''_{1}`, `V^{-\prime}`.
    pub fn latex(self) -> String {
        let primes = "'".repeat(self.order as usize);
        match self.family {
            Family::W => format!("w{}_{{{}}}", primes, self.index),
            Family::U => format!("u{}_{{{}}}", primes, self.index),
            Family::VPlus | Family::VMinus => {
                let sign = if self.family == Family::VPlus { "+" } else { "-" };
                let tail = "\\prime".repeat(self.order as usize);
                format!("V^{{{}{}}}", sign, tail)
            }
            Family::C => format!("C_{{{}}}", self.index),
            Family::Param => {
                let (kind, k) = self.param_kind().unwrap();
                format!("{}_{{{}}}", kind.latex(), k)
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.plain())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_follow_dimensions() {
        assert_eq!(Generator::w(1).weight(2), Some(1));
        assert_eq!(Generator::w(1).with_order(3).weight(2), Some(4));
        assert_eq!(Generator::u(0).weight(4), Some(4));
        assert_eq!(Generator::v_minus().with_order(1).weight(7), Some(3));
        assert_eq!(Generator::c(3).weight(4), Some(8));
        assert_eq!(Generator::param(ParamKind::Gamma, 7).weight(4), Some(0));
        assert_eq!(Generator::w(3).weight(3), None);
    }

    #[test]
    fn ordering_is_family_index_order() {
        let mut gens = vec![
            Generator::c(1),
            Generator::u(0),
            Generator::w(1).with_order(2),
            Generator::w(1),
            Generator::w(0).with_order(5),
        ];
        gens.sort();
        assert_eq!(
            gens,
            vec![
                Generator::w(0).with_order(5),
                Generator::w(1),
                Generator::w(1).with_order(2),
                Generator::u(0),
                Generator::c(1),
            ]
        );
    }

    #[test]
    fn param_names_round_trip() {
        let g = Generator::param(ParamKind::Beta, 3);
        assert_eq!(g.plain(), "beta3");
        assert_eq!(g.param_kind(), Some((ParamKind::Beta, 3)));
        assert_eq!(g.latex(), "\\beta_{3}");
    }
}
