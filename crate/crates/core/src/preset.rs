//! Named parameter presets: values, target monomials and display scales.

use crate::diffring::{parse, DiffPoly, Monomial, Q};
use crate::reduction::IntegralScale;
use crate::susy::{assignment_from_names, ParamAssignment, SusyError};

/// A parameter choice for the transformation.
pub trait Preset: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Ambient `N` for which the preset is defined.
    fn supports(&self, n: u32) -> bool;

    /// The parameter values; an empty assignment keeps them symbolic.
    fn params(&self, n: u32) -> Result<ParamAssignment, SusyError>;

    /// `(k, m)`: the coefficient of `m` in `Ī_k` vanishes at these values.
    fn targets(&self, n: u32) -> Vec<(u32, Monomial)>;

    /// The displayed normalization of `J_k`, if any.
    fn scale(&self, n: u32, k: u32) -> Option<IntegralScale>;
}

fn unsupported(name: &str, n: u32) -> SusyError {
    SusyError::InvalidN {
        n,
        reason: format!("preset '{name}' is not defined for this N"),
    }
}

fn values(n: u32, pairs: &[(&str, &str)]) -> Result<ParamAssignment, SusyError> {
    let parsed = pairs.iter().map(|(name, v)| {
        let q = parse(v, n)
            .ok()
            .and_then(|p| p.as_constant())
            .expect("preset values are rational literals");
        (*name, q)
    });
    assignment_from_names(n, parsed)
}

fn monomials(n: u32, list: &[(u32, &str)]) -> Vec<(u32, Monomial)> {
    list.iter()
        .map(|(k, m)| {
            let p: DiffPoly = parse(m, n).expect("target monomials are well formed");
            let (m, _) = p.terms().next().expect("nonzero monomial");
            (*k, m.clone())
        })
        .collect()
}

fn scale(n: u32, display: i64, reference: &str, coeff: i64) -> IntegralScale {
    let p = parse(reference, n).expect("reference monomials are well formed");
    let reference = p.terms().next().expect("nonzero monomial").0.clone();
    IntegralScale {
        display: Q::from_integer(display.into()),
        reference,
        coeff: Q::from_integer(coeff.into()),
    }
}

fn paper_scale(n: u32, k: u32) -> Option<IntegralScale> {
    Some(match (n, k) {
        (2, 1) => scale(n, 16, "w1'^2", -1),
        (3, 1) => scale(n, -4, "u1''", 1),
        (3, 2) => scale(n, 8, "u0^2", 1),
        (4, 1) => scale(n, 2, "u0", 1),
        (4, 2) => scale(n, -128, "u1^2", -16),
        (4, 3) => scale(n, 1024, "w3'''^2", -1),
        _ => return None,
    })
}

const PAPER_FOUR: &[(&str, &str)] = &[
    ("alpha1", "3/2"),
    ("beta1", "-9/4"),
    ("beta2", "-1"),
    ("beta3", "3/2"),
    ("gamma1", "-1/2"),
    ("gamma2", "1"),
    ("gamma3", "11/8"),
    ("gamma4", "-1"),
    ("gamma5", "-1/4"),
    ("gamma6", "1/2"),
    ("gamma7", "-3/8"),
];

const FOOTNOTE_FOUR: &[(&str, &str)] = &[
    ("alpha1", "0"),
    ("beta1", "-9/4"),
    ("beta2", "-3/4"),
    ("beta3", "1/4"),
    ("gamma1", "-1/2"),
    ("gamma2", "-1/2"),
    ("gamma3", "-1/8"),
    ("gamma4", "-1"),
    ("gamma5", "-1/4"),
    ("gamma6", "0"),
    ("gamma7", "1/16"),
];

/// The values chosen in the text for N = 2, 3, 4.
pub struct Paper;

impl Preset for Paper {
    fn name(&self) -> &'static str {
        "paper"
    }

    fn summary(&self) -> &'static str {
        "values that make the transformed conditions simplest (N = 2, 3, 4)"
    }

    fn supports(&self, n: u32) -> bool {
        (2..=4).contains(&n)
    }

    fn params(&self, n: u32) -> Result<ParamAssignment, SusyError> {
        match n {
            2 => values(n, &[("alpha0", "-1/4")]),
            3 => values(
                n,
                &[("alpha1", "1"), ("beta1", "-1"), ("beta2", "-1"), ("beta3", "1")],
            ),
            4 => values(n, PAPER_FOUR),
            _ => Err(unsupported(self.name(), n)),
        }
    }

    fn targets(&self, n: u32) -> Vec<(u32, Monomial)> {
        let list: &[(u32, &str)] = match n {
            2 => &[(0, "w1^2*w1'")],
            3 => &[
                (1, "w2^2*w2'"),
                (1, "w2'*u1"),
                (1, "w2'''"),
                (0, "w2*w2'*u1"),
                (0, "w2*w2'''"),
                (0, "w2^3*w2'"),
                (0, "w2'*w2''"),
            ],
            4 => &[
                (2, "w3^2*w3'"),
                (2, "w3'*u2"),
                (2, "w3'''"),
                (1, "w3*w3'*u2"),
                (1, "w3*w3'''"),
                (1, "w3^2*u2'"),
                (1, "w3^3*w3'"),
                (1, "w3'*w3''"),
                (1, "w3'*u1"),
                (1, "u2*u2'"),
                (1, "u2'''"),
                (0, "w3*w3'*u1"),
            ],
            _ => &[],
        };
        monomials(n, list)
    }

    fn scale(&self, n: u32, k: u32) -> Option<IntegralScale> {
        paper_scale(n, k)
    }
}

/// The alternative N = 4 values.
pub struct FootnoteAlt;

impl Preset for FootnoteAlt {
    fn name(&self) -> &'static str {
        "footnote-alt"
    }

    fn summary(&self) -> &'static str {
        "alternative N = 4 values with a simpler third integral"
    }

    fn supports(&self, n: u32) -> bool {
        n == 4
    }

    fn params(&self, n: u32) -> Result<ParamAssignment, SusyError> {
        if n != 4 {
            return Err(unsupported(self.name(), n));
        }
        values(n, FOOTNOTE_FOUR)
    }

    fn targets(&self, n: u32) -> Vec<(u32, Monomial)> {
        if n != 4 {
            return Vec::new();
        }
        monomials(
            n,
            &[
                (2, "w3*u2'"),
                (2, "w3^2*w3'"),
                (2, "w3'''"),
                (1, "w3*w3'*u2"),
                (1, "w3*w3'''"),
                (1, "w3^2*u2'"),
                (1, "w3^3*w3'"),
                (1, "w3'*w3''"),
                (1, "w3'*u1"),
                (1, "u2*u2'"),
                (1, "u2'''"),
                (0, "w3^4*w3'"),
            ],
        )
    }

    fn scale(&self, n: u32, k: u32) -> Option<IntegralScale> {
        paper_scale(n, k)
    }
}

/// All parameters symbolic.
pub struct Generic;

impl Preset for Generic {
    fn name(&self) -> &'static str {
        "generic"
    }

    fn summary(&self) -> &'static str {
        "every parameter left symbolic"
    }

    fn supports(&self, n: u32) -> bool {
        (2..=4).contains(&n)
    }

    fn params(&self, n: u32) -> Result<ParamAssignment, SusyError> {
        if !self.supports(n) {
            return Err(unsupported(self.name(), n));
        }
        Ok(ParamAssignment::new())
    }

    fn targets(&self, _n: u32) -> Vec<(u32, Monomial)> {
        Vec::new()
    }

    fn scale(&self, _n: u32, _k: u32) -> Option<IntegralScale> {
        None
    }
}

static PRESETS: &[&dyn Preset] = &[&Paper, &FootnoteAlt, &Generic];

/// Every registered preset, in a fixed order.
pub fn presets() -> &'static [&'static dyn Preset] {
    PRESETS
}

/// Looks a preset up by name.
pub fn preset(name: &str) -> Option<&'static dyn Preset> {
    PRESETS.iter().copied().find(|p| p.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let names: Vec<&str> = presets().iter().map(|p| p.name()).collect();
        assert_eq!(names, ["paper", "footnote-alt", "generic"]);
        assert!(preset("paper").is_some());
        assert!(preset("nope").is_none());
    }

    #[test]
    fn support_ranges() {
        assert!(preset("footnote-alt").unwrap().params(3).is_err());
        assert!(preset("paper").unwrap().params(5).is_err());
        assert_eq!(preset("paper").unwrap().params(4).unwrap().len(), 11);
        assert!(preset("generic").unwrap().params(3).unwrap().is_empty());
    }
}
