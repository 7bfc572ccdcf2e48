//! Weight-preserving polynomial changes of variables `w_k -> u_k`.

use std::collections::BTreeMap;

use crate::diffring::{parse, DiffPoly, Generator, ParamKind, Substitution, Q};

use super::SusyError;

/// Values for some or all of the dimensionless parameters; absent ones
/// stay symbolic.
pub type ParamAssignment = BTreeMap<Generator, Q>;

/// The parameters of the transformation for ambient `n`.
pub fn parameter_names(n: u32) -> Result<Vec<Generator>, SusyError> {
    let p = Generator::param;
    Ok(match n {
        2 => vec![p(ParamKind::Alpha, 0)],
        3 => vec![
            p(ParamKind::Alpha, 1),
            p(ParamKind::Beta, 1),
            p(ParamKind::Beta, 2),
            p(ParamKind::Beta, 3),
        ],
        4 => {
            let mut v = vec![p(ParamKind::Alpha, 1)];
            v.extend((1..=3).map(|k| p(ParamKind::Beta, k)));
            v.extend((1..=7).map(|k| p(ParamKind::Gamma, k)));
            v
        }
        _ => {
            return Err(SusyError::InvalidN {
                n,
                reason: "transformations exist for N = 2, 3, 4".into(),
            })
        }
    })
}

/// Builds an assignment from `(name, value)` pairs such as `("alpha1", 3/2)`.
pub fn assignment_from_names<'a, I>(n: u32, pairs: I) -> Result<ParamAssignment, SusyError>
where
    I: IntoIterator<Item = (&'a str, Q)>,
{
    let known = parameter_names(n)?;
    let mut out = ParamAssignment::new();
    for (name, value) in pairs {
        let g = known
            .iter()
            .copied()
            .find(|g| g.plain() == name)
            .ok_or_else(|| SusyError::UnknownParameter(name.to_string()))?;
        out.insert(g, value);
    }
    Ok(out)
}

fn images(n: u32) -> Vec<(Generator, &'static str)> {
    match n {
        2 => vec![(Generator::w(0), "u0 + 1/2*w1' - alpha0*w1^2")],
        3 => vec![
            (Generator::w(1), "6*u1 + w2' - alpha1*w2^2"),
            (
                Generator::w(0),
                "u0 + 3*u1' - beta1*w2'' - alpha1*w2*w2' - 6*beta2*w2*u1 - beta3*w2^3",
            ),
        ],
        4 => vec![
            (Generator::w(2), "u2 + 3/2*w3' - alpha1*w3^2"),
            (
                Generator::w(1),
                "u1 + u2' - beta1*w3'' - 2*alpha1*w3*w3' - beta2*w3*u2 - beta3*w3^3",
            ),
            (
                Generator::w(0),
                "u0 + 1/2*u1' - gamma1*u2'' - (beta1/2 + 1/4)*w3''' - gamma2*w3*w3'' \
                 - gamma3*w3'^2 - beta2/2*(w3*u2)' - gamma4*w3*u1 - gamma5*u2^2 \
                 - 3*beta3/2*w3^2*w3' - gamma6*w3^2*u2 - gamma7*w3^4",
            ),
        ],
        _ => vec![],
    }
}

/// The transformation for `n` with `params` substituted; parameters not in
/// `params` remain symbolic.
pub fn ansatz_substitution(n: u32, params: &ParamAssignment) -> Result<Substitution, SusyError> {
    let known = parameter_names(n)?;
    if let Some(g) = params.keys().find(|g| !known.contains(g)) {
        return Err(SusyError::UnknownParameter(g.plain()));
    }
    let mut values = Substitution::identity(n);
    for (g, v) in params {
        values = values.with_value(*g, v.clone())?;
    }
    let mut s = Substitution::identity(n);
    for (g, text) in images(n) {
        let img: DiffPoly = parse(text, n).expect("transformation text is well formed");
        s.insert(g, values.apply(&img))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::{q, qi};

    #[test]
    fn images_are_weight_preserving() {
        for n in 2..=4 {
            let s = ansatz_substitution(n, &ParamAssignment::new()).unwrap();
            assert!(s.is_weight_preserving(), "N={n}");
        }
    }

    #[test]
    fn paper_values_for_four() {
        let a = assignment_from_names(4, [("alpha1", q(3, 2))]).unwrap();
        let s = ansatz_substitution(4, &a).unwrap();
        let img = s.image_of_base(Generator::w(2)).unwrap();
        assert_eq!(*img, parse("u2 + 3/2*w3' - 3/2*w3^2", 4).unwrap());
    }

    #[test]
    fn unknown_parameter_is_rejected() {
        assert!(assignment_from_names(2, [("beta1", qi(1))]).is_err());
        let mut a = ParamAssignment::new();
        a.insert(Generator::param(ParamKind::Gamma, 3), qi(0));
        assert!(ansatz_substitution(3, &a).is_err());
    }
}
