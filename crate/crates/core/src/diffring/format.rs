use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::parse::parse;
use super::poly::DiffPoly;
use super::{Q, RingError};

/// Output styles shared by polynomials, operators and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
    Json,
}

impl Style {
    pub fn parse(s: &str) -> Option<Style> {
        match s {
            "plain" => Some(Style::Plain),
            "latex" => Some(Style::Latex),
            "json" => Some(Style::Json),
            _ => None,
        }
    }
}

pub fn format(p: &DiffPoly, style: Style) -> String {
    match style {
        Style::Plain => plain(p),
        Style::Latex => latex(p),
        Style::Json => serde_json::to_string(&PolyJson::from(p)).expect("serializable"),
    }
}

fn rational_plain(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        if i == 0 {
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

pub fn plain(p: &DiffPoly) -> String {
    let terms = p
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            let a = c.abs();
            let body = if m.is_one() {
                rational_plain(&a)
            } else if a.is_one() {
                m.plain()
            } else {
                format!("{}*{}", rational_plain(&a), m.plain())
            };
            (c.is_negative(), body)
        })
        .collect();
    join_terms(terms)
}

fn rational_latex(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn latex(p: &DiffPoly) -> String {
    let terms: Vec<(bool, String)> = p
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            let a = c.abs();
            let body = if m.is_one() {
                rational_latex(&a)
            } else if a.is_one() {
                m.latex()
            } else {
                format!("{}{}", rational_latex(&a), m.latex())
            };
            (c.is_negative(), body)
        })
        .collect();
    join_terms(terms).replace(" ", "")
}

/// Canonical JSON serialization of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    #[serde(rename = "ambientN")]
    pub ambient_n: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<(String, u32)>,
    pub coeff: String,
}

impl From<&DiffPoly> for PolyJson {
    fn from(p: &DiffPoly) -> Self {
        PolyJson {
            ambient_n: p.ambient_n(),
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    monomial: m.factors().iter().map(|&(g, e)| (g.plain(), e)).collect(),
                    coeff: rational_plain(c),
                })
                .collect(),
        }
    }
}

fn parse_rational(s: &str) -> Option<Q> {
    match s.split_once('/') {
        None => s.trim().parse::<BigInt>().ok().map(Q::from_integer),
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| Q::new(a, b))
        }
    }
}

impl TryFrom<&PolyJson> for DiffPoly {
    type Error = RingError;

    fn try_from(j: &PolyJson) -> Result<Self, RingError> {
        let n = j.ambient_n;
        let mut p = DiffPoly::zero(n);
        for t in &j.terms {
            let mut factors = Vec::new();
            for (sym, e) in &t.monomial {
                let g = parse(sym, n)
                    .ok()
                    .and_then(|x| {
                        let (m, c) = x.terms().next().map(|(m, c)| (m.clone(), c.clone()))?;
                        (x.len() == 1 && c.is_one() && m.factors().len() == 1 && m.factors()[0].1 == 1)
                            .then(|| m.factors()[0].0)
                    })
                    .ok_or_else(|| RingError::BadJson(format!("bad generator '{sym}'")))?;
                factors.push((g, *e));
            }
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| RingError::BadJson(format!("bad coefficient '{}'", t.coeff)))?;
            p.add_term(Monomial::from_factors(factors), c);
        }
        Ok(p)
    }
}

pub fn to_json(p: &DiffPoly) -> String {
    format(p, Style::Json)
}

pub fn from_json(s: &str) -> Result<DiffPoly, RingError> {
    let j: PolyJson = serde_json::from_str(s).map_err(|e| RingError::BadJson(e.to_string()))?;
    DiffPoly::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_output_reparses() {
        let p = parse("2*w1*w1'' - w1'^2 + 4*w1^2*u0 - 3/7*C1", 2).unwrap();
        let s = plain(&p);
        assert_eq!(parse(&s, 2).unwrap(), p);
        assert_eq!(plain(&DiffPoly::zero(2)), "0");
    }

    #[test]
    fn latex_uses_prime_notation() {
        let p = parse("w1''' - 1/2*w1^2", 2).unwrap();
        let s = latex(&p);
        assert!(s.contains("w'''_{1}"), "{s}");
        assert!(s.contains("\\frac{1}{2}(w_{1})^{2}"), "{s}");
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let p = parse("V+' - 4*w0*w1 + 1/3*alpha0*w1^2", 2).unwrap();
        let s = to_json(&p);
        let back = from_json(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(to_json(&back), s);
        assert!(s.starts_with("{\"ambientN\":2"));
    }
}
