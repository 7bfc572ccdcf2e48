//! The golden corpus: displayed formulas stored in canonical JSON and
//! compared against the engine's derivations.

use std::collections::BTreeMap;

use nfold::diffop::{DiffOperator, OperatorJson};
use nfold::diffring::format::PolyJson;
use nfold::diffring::{
    parse, parse_fraction, parse_operator, DiffPoly, Fraction, Generator, Monomial, Q,
};
use nfold::reduction::product::constants_to_integrals;
use nfold::reduction::{check_rational, ProductReport};
use nfold::susy::{ansatz_substitution, build_system, Potentials, Stage, SusySystem};
use serde::{Deserialize, Serialize};

use crate::engine::{lookup_preset, parse_stage, Engine};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// Whether an entry is transcribed from a display or computed once and
/// frozen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Paper,
    Derived,
}

/// The engine object an entry is compared with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "object", rename_all = "camelCase")]
pub enum Source {
    /// `I_k` at `stage`.
    Condition { stage: String, k: u32 },
    /// `V±` solving the two top conditions, after the ansatz if
    /// `transformed`.
    Potential { sign: Sign, transformed: bool },
    /// `P±`, after the ansatz if `transformed`.
    Charge { sign: Sign, transformed: bool },
    /// The image of a base generator under the ansatz.
    Ansatz { generator: String },
    /// `J_k`.
    Integral { k: u32 },
    /// `L_kj`.
    Multiplier { k: u32, j: u32 },
    /// `P∓P± − 2^N[...]`; `plus` is `P−P+` against `H+`.
    Residual { sign: Sign },
    /// A closed form after eliminating generators by rational images,
    /// checked with cleared denominators.
    ClosedForm {
        target: Target,
        eliminate: Vec<Elimination>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "of", rename_all = "camelCase")]
pub enum Target {
    /// A polynomial in the transformed variables, e.g. `u0` or `u1^2`.
    Expr { expr: String },
    Charge { sign: Sign },
    Potential { sign: Sign },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub generator: String,
    pub image: FractionJson,
}

/// A polynomial over a monomial denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionJson {
    pub numerator: PolyJson,
    pub denominator: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Expression {
    Poly {
        poly: PolyJson,
    },
    Operator {
        operator: OperatorJson,
    },
    /// `Σ_i (Σ_j K_ij I_j) ∂^i`, each `K_ij` applied to `I_j`.
    Combination { terms: Vec<CombinationTerm> },
    Fraction {
        fraction: FractionJson,
    },
    /// An operator whose coefficients are fractions.
    FractionOperator { coeffs: Vec<FractionCoeff> },
}

/// `K_ij` with `i = order` and `j = condition`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationTerm {
    pub order: u32,
    pub condition: u32,
    pub operator: OperatorJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionCoeff {
    pub order: u32,
    pub fraction: FractionJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub id: String,
    pub n: u32,
    pub preset: String,
    /// Where the display appears.
    pub provenance: String,
    pub origin: Origin,
    /// The display shows `scale` times the engine object.
    pub scale: String,
    pub source: Source,
    pub expression: Expression,
}

/// A decoded expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(DiffPoly),
    Operator(DiffOperator),
    Combination(BTreeMap<u32, BTreeMap<u32, DiffOperator>>),
    Fraction(Fraction),
    FractionOperator(BTreeMap<u32, Fraction>),
}

const FILES: &[(&str, &str)] = &[
    ("two.json", include_str!("../goldens/two.json")),
    ("three.json", include_str!("../goldens/three.json")),
    ("four.json", include_str!("../goldens/four.json")),
    ("footnote-alt.json", include_str!("../goldens/footnote-alt.json")),
];

/// Every corpus entry, in file order.
pub fn corpus() -> Result<Vec<GoldenEntry>, CliError> {
    let mut out = Vec::new();
    for (name, text) in FILES {
        let entries: Vec<GoldenEntry> =
            serde_json::from_str(text).map_err(|e| CliError::Corpus {
                id: name.to_string(),
                reason: e.to_string(),
            })?;
        out.extend(entries);
    }
    Ok(out)
}

pub fn find(id: &str) -> Result<GoldenEntry, CliError> {
    corpus()?
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CliError::Usage(format!("no golden entry '{id}'")))
}

/// Serializes a corpus file: pretty JSON with a trailing newline.
pub fn to_file_text(entries: &[GoldenEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("serializable");
    s.push('\n');
    s
}

fn corpus_err(id: &str, reason: impl ToString) -> CliError {
    CliError::Corpus {
        id: id.to_string(),
        reason: reason.to_string(),
    }
}

fn monomial_from(n: u32, factors: &[(String, u32)]) -> Result<Monomial, String> {
    let mut out = Vec::new();
    for (sym, e) in factors {
        let g = generator(n, sym)?;
        out.push((g, *e));
    }
    Ok(Monomial::from_factors(out))
}

fn generator(n: u32, sym: &str) -> Result<Generator, String> {
    let p = parse(sym, n).map_err(|e| e.to_string())?;
    let (m, c) = p.terms().next().ok_or_else(|| format!("empty symbol '{sym}'"))?;
    match m.factors() {
        [(g, 1)] if p.len() == 1 && *c == Q::from_integer(1.into()) => Ok(*g),
        _ => Err(format!("'{sym}' is not a single generator")),
    }
}

impl FractionJson {
    pub fn from_fraction(f: &Fraction) -> Self {
        FractionJson {
            numerator: PolyJson::from(f.numerator()),
            denominator: f
                .denominator()
                .factors()
                .iter()
                .map(|&(g, e)| (g.plain(), e))
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<Fraction, String> {
        let num = DiffPoly::try_from(&self.numerator).map_err(|e| e.to_string())?;
        let den = monomial_from(self.numerator.ambient_n, &self.denominator)?;
        Ok(Fraction::new(num, den))
    }
}

fn op_decode(j: &OperatorJson) -> Result<DiffOperator, String> {
    DiffOperator::try_from(j).map_err(|e| e.to_string())
}

impl Expression {
    pub fn encode(v: &Value) -> Expression {
        match v {
            Value::Poly(p) => Expression::Poly {
                poly: PolyJson::from(p),
            },
            Value::Operator(o) => Expression::Operator {
                operator: OperatorJson::from(o),
            },
            Value::Combination(c) => Expression::Combination {
                terms: c
                    .iter()
                    .flat_map(|(i, ks)| {
                        ks.iter().map(move |(j, k)| CombinationTerm {
                            order: *i,
                            condition: *j,
                            operator: OperatorJson::from(k),
                        })
                    })
                    .collect(),
            },
            Value::Fraction(f) => Expression::Fraction {
                fraction: FractionJson::from_fraction(f),
            },
            Value::FractionOperator(c) => Expression::FractionOperator {
                coeffs: c
                    .iter()
                    .map(|(i, f)| FractionCoeff {
                        order: *i,
                        fraction: FractionJson::from_fraction(f),
                    })
                    .collect(),
            },
        }
    }

    pub fn decode(&self) -> Result<Value, String> {
        Ok(match self {
            Expression::Poly { poly } => {
                Value::Poly(DiffPoly::try_from(poly).map_err(|e| e.to_string())?)
            }
            Expression::Operator { operator } => Value::Operator(op_decode(operator)?),
            Expression::Combination { terms } => {
                let mut out: BTreeMap<u32, BTreeMap<u32, DiffOperator>> = BTreeMap::new();
                for t in terms {
                    let row = out.entry(t.order).or_default();
                    if row.insert(t.condition, op_decode(&t.operator)?).is_some() {
                        return Err(format!("duplicate term K[{}][{}]", t.order, t.condition));
                    }
                }
                Value::Combination(out)
            }
            Expression::Fraction { fraction } => Value::Fraction(fraction.decode()?),
            Expression::FractionOperator { coeffs } => {
                let mut out = BTreeMap::new();
                for c in coeffs {
                    if out.insert(c.order, c.fraction.decode()?).is_some() {
                        return Err(format!("duplicate coefficient of d^{}", c.order));
                    }
                }
                Value::FractionOperator(out)
            }
        })
    }
}

impl Value {
    /// Plain-text rendering, one line per part.
    pub fn plain_lines(&self) -> Vec<(String, String)> {
        match self {
            Value::Poly(p) => vec![(String::new(), p.to_string())],
            Value::Operator(o) => vec![(String::new(), o.plain())],
            Value::Fraction(f) => vec![(String::new(), f.to_string())],
            Value::Combination(c) => c
                .iter()
                .flat_map(|(i, ks)| {
                    ks.iter()
                        .map(move |(j, k)| (format!("d^{i} <- I{j}"), k.plain()))
                })
                .collect(),
            Value::FractionOperator(c) => c
                .iter()
                .rev()
                .map(|(i, f)| (format!("d^{i}"), f.to_string()))
                .collect(),
        }
    }

    /// Checks that the plain rendering parses back to the same value.
    pub fn round_trips(&self, n: u32) -> Result<(), String> {
        let back = match self {
            Value::Poly(p) => Value::Poly(parse(&p.to_string(), n).map_err(|e| e.to_string())?),
            Value::Operator(o) => {
                Value::Operator(parse_operator(&o.plain(), n).map_err(|e| e.to_string())?)
            }
            Value::Fraction(f) => {
                Value::Fraction(parse_fraction(&f.to_string(), n).map_err(|e| e.to_string())?)
            }
            Value::Combination(c) => {
                let mut out = BTreeMap::new();
                for (i, ks) in c {
                    let mut row = BTreeMap::new();
                    for (j, k) in ks {
                        row.insert(*j, parse_operator(&k.plain(), n).map_err(|e| e.to_string())?);
                    }
                    out.insert(*i, row);
                }
                Value::Combination(out)
            }
            Value::FractionOperator(c) => {
                let mut out = BTreeMap::new();
                for (i, f) in c {
                    out.insert(
                        *i,
                        parse_fraction(&f.to_string(), n).map_err(|e| e.to_string())?,
                    );
                }
                Value::FractionOperator(out)
            }
        };
        if &back == self {
            Ok(())
        } else {
            Err("plain rendering does not parse back to the stored value".into())
        }
    }

    /// The common weight of every part, or why there is none.
    pub fn weight(&self) -> Result<i64, String> {
        let frac_weight = |f: &Fraction, n: u32| -> Result<i64, String> {
            let w = f.numerator().weight_of().map_err(|e| e.to_string())?;
            let d = f.denominator().weight(n).ok_or("denominator has no weight")?;
            Ok(w - d)
        };
        let mut found: Option<i64> = None;
        let mut agree = |w: i64, what: String| -> Result<(), String> {
            match found {
                Some(f) if f != w => Err(format!("{what} has weight {w}, expected {f}")),
                _ => {
                    found = Some(w);
                    Ok(())
                }
            }
        };
        match self {
            Value::Poly(p) => agree(p.weight_of().map_err(|e| e.to_string())?, "poly".into())?,
            Value::Operator(o) => {
                agree(o.weight_of().map_err(|e| e.to_string())?, "operator".into())?
            }
            Value::Fraction(f) => {
                agree(frac_weight(f, f.numerator().ambient_n())?, "fraction".into())?
            }
            Value::Combination(c) => {
                // Each K_ij is homogeneous on its own; I_j carries weight
                // N + 2 − j, so K_ij + I_j + i is fixed.
                for (i, ks) in c {
                    for (j, k) in ks {
                        let n = k.ambient_n() as i64;
                        let w = k.weight_of().map_err(|e| format!("K[{i}][{j}]: {e}"))?;
                        agree(w + n + 2 - *j as i64 + *i as i64, format!("K[{i}][{j}]"))?;
                    }
                }
            }
            Value::FractionOperator(c) => {
                for (i, f) in c {
                    let w = frac_weight(f, f.numerator().ambient_n())?;
                    agree(w + *i as i64, format!("order {i}"))?;
                }
            }
        }
        found.ok_or_else(|| "empty expression".into())
    }
}

/// Outcome of comparing one entry with the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    /// `display − scale · engine`, or the cleared difference, when nonzero.
    pub residual: Option<String>,
}

fn scale_of(e: &GoldenEntry) -> Result<Q, CliError> {
    let p = parse(&e.scale, e.n).map_err(|x| corpus_err(&e.id, x))?;
    p.as_constant()
        .ok_or_else(|| corpus_err(&e.id, "scale is not a rational number"))
}

fn system(engine: &Engine, e: &GoldenEntry, transformed: bool) -> Result<SusySystem, CliError> {
    let sys = build_system(e.n, Potentials::General)?;
    if !transformed {
        return Ok(sys);
    }
    let preset = lookup_preset(&e.preset)?;
    let params = engine.params(e.n, preset)?;
    Ok(sys.substitute(&ansatz_substitution(e.n, &params)?))
}

fn charge(sys: &SusySystem, sign: Sign) -> DiffOperator {
    match sign {
        Sign::Plus => sys.charge_plus(),
        Sign::Minus => sys.charge_minus().clone(),
    }
}

fn potential(sys: &SusySystem, sign: Sign) -> DiffPoly {
    match sign {
        Sign::Plus => sys.v_plus().clone(),
        Sign::Minus => sys.v_minus().clone(),
    }
}

fn compare_poly(id: &str, expected: &DiffPoly, got: &DiffPoly) -> Outcome {
    let diff = expected - got;
    Outcome {
        id: id.to_string(),
        passed: diff.is_zero(),
        detail: if diff.is_zero() {
            "equal".into()
        } else {
            format!("{} differing terms", diff.len())
        },
        residual: (!diff.is_zero()).then(|| diff.to_string()),
    }
}

fn compare_op(id: &str, expected: &DiffOperator, got: &DiffOperator) -> Outcome {
    let diff = expected - got;
    let orders: Vec<String> = diff.coeffs().map(|(i, _)| i.to_string()).collect();
    Outcome {
        id: id.to_string(),
        passed: diff.is_zero(),
        detail: if diff.is_zero() {
            "equal".into()
        } else {
            format!("differs at orders {}", orders.join(", "))
        },
        residual: (!diff.is_zero()).then(|| diff.to_string()),
    }
}

fn wrong_kind(e: &GoldenEntry) -> CliError {
    corpus_err(&e.id, "expression kind does not match its source")
}

fn product(engine: &Engine, e: &GoldenEntry) -> Result<std::sync::Arc<ProductReport>, CliError> {
    engine.integrals(e.n, lookup_preset(&e.preset)?)
}

/// Compares `e` with the engine's derivation.
pub fn evaluate(engine: &Engine, e: &GoldenEntry) -> Result<Outcome, CliError> {
    let value = e.expression.decode().map_err(|x| corpus_err(&e.id, x))?;
    let scale = scale_of(e)?;
    let n = e.n;
    match (&e.source, &value) {
        (Source::Condition { stage, k }, Value::Poly(p)) => {
            let stage = parse_stage(stage)?;
            let cs = engine.conditions(n, stage, lookup_preset(&e.preset)?)?;
            let got = cs
                .get(*k)
                .ok_or_else(|| corpus_err(&e.id, format!("no condition I_{k}")))?;
            Ok(compare_poly(&e.id, p, &got.scale(&scale)))
        }
        (Source::Potential { sign, transformed }, Value::Poly(p)) => {
            let sys = system(engine, e, *transformed)?;
            Ok(compare_poly(&e.id, p, &potential(&sys, *sign).scale(&scale)))
        }
        (Source::Charge { sign, transformed }, Value::Operator(o)) => {
            let sys = system(engine, e, *transformed)?;
            Ok(compare_op(&e.id, o, &charge(&sys, *sign).scale(&scale)))
        }
        (Source::Ansatz { generator: g }, Value::Poly(p)) => {
            let params = engine.params(n, lookup_preset(&e.preset)?)?;
            let s = ansatz_substitution(n, &params)?;
            let g = generator(n, g).map_err(|x| corpus_err(&e.id, x))?;
            let got = s
                .image_of_base(g)
                .cloned()
                .unwrap_or_else(|| DiffPoly::var(n, g));
            Ok(compare_poly(&e.id, p, &got.scale(&scale)))
        }
        (Source::Integral { k }, Value::Poly(p)) => {
            let rep = product(engine, e)?;
            let ic = rep
                .integrals
                .iter()
                .find(|ic| ic.k == *k)
                .ok_or_else(|| corpus_err(&e.id, format!("no integral J_{k}")))?;
            Ok(compare_poly(&e.id, p, &ic.j.scale(&scale)))
        }
        (Source::Multiplier { k, j }, Value::Operator(o)) => {
            let rep = product(engine, e)?;
            let ic = rep
                .integrals
                .iter()
                .find(|ic| ic.k == *k)
                .ok_or_else(|| corpus_err(&e.id, format!("no integral J_{k}")))?;
            let l = ic
                .multipliers
                .get(j)
                .cloned()
                .unwrap_or_else(|| DiffOperator::zero(n));
            Ok(compare_op(&e.id, o, &l.scale(&scale)))
        }
        (Source::Residual { sign }, Value::Combination(c)) => {
            let rep = product(engine, e)?;
            let want = if *sign == Sign::Plus { 1 } else { -1 };
            let side = rep
                .sides
                .iter()
                .find(|s| s.sign == want)
                .ok_or_else(|| corpus_err(&e.id, "missing product side"))?;
            let params = engine.params(n, lookup_preset(&e.preset)?)?;
            let s = ansatz_substitution(n, &params)?;
            let mut expected = DiffOperator::zero(n);
            for (i, ks) in c {
                let mut f = DiffPoly::zero(n);
                for (j, k) in ks {
                    let ij = rep
                        .conditions
                        .iter()
                        .find(|(x, _)| x == j)
                        .map(|(_, p)| p)
                        .ok_or_else(|| corpus_err(&e.id, format!("no condition I_{j}")))?;
                    f += &k.substitute(&s).apply(ij);
                }
                expected.add_term(*i, f);
            }
            Ok(compare_op(&e.id, &expected, &side.residual.scale(&scale)))
        }
        (Source::ClosedForm { target, eliminate }, _) => {
            closed_form(engine, e, &scale, target, eliminate, &value)
        }
        _ => Err(wrong_kind(e)),
    }
}

fn closed_form(
    engine: &Engine,
    e: &GoldenEntry,
    scale: &Q,
    target: &Target,
    eliminate: &[Elimination],
    value: &Value,
) -> Result<Outcome, CliError> {
    let n = e.n;
    let preset = lookup_preset(&e.preset)?;
    let params = engine.params(n, preset)?;
    let sys = build_system(n, Potentials::General)?.substitute(&ansatz_substitution(n, &params)?);
    let lhs: BTreeMap<u32, Fraction> = match (target, value) {
        (Target::Expr { expr }, Value::Fraction(_)) => {
            let p = parse(expr, n).map_err(|x| corpus_err(&e.id, x))?;
            BTreeMap::from([(0, Fraction::from_poly(p))])
        }
        (Target::Potential { sign }, Value::Fraction(_)) => {
            BTreeMap::from([(0, Fraction::from_poly(potential(&sys, *sign)))])
        }
        (Target::Charge { sign }, Value::FractionOperator(_)) => charge(&sys, *sign)
            .coeffs()
            .map(|(i, a)| (i, Fraction::from_poly(a.clone())))
            .collect(),
        _ => return Err(wrong_kind(e)),
    };
    let rhs: BTreeMap<u32, Fraction> = match value {
        Value::Fraction(f) => BTreeMap::from([(0, f.clone())]),
        Value::FractionOperator(c) => c.clone(),
        _ => return Err(wrong_kind(e)),
    };
    let mut subs = Vec::new();
    for el in eliminate {
        let g = generator(n, &el.generator).map_err(|x| corpus_err(&e.id, x))?;
        subs.push((g, el.image.decode().map_err(|x| corpus_err(&e.id, x))?));
    }
    let rep = engine.integrals(n, preset)?;
    let c_to_j = constants_to_integrals(n, &rep.integrals);
    let module: Vec<(u32, DiffPoly)> = engine
        .conditions(n, Stage::Transformed, preset)?
        .conditions
        .into_iter()
        .map(|c| (c.k, c.poly))
        .collect();
    let zero = Fraction::from_poly(DiffPoly::zero(n));
    let orders: std::collections::BTreeSet<u32> = lhs.keys().chain(rhs.keys()).copied().collect();
    let mut failed = Vec::new();
    let mut residuals = Vec::new();
    let mut certified = 0;
    for i in orders {
        let mut l = lhs.get(&i).unwrap_or(&zero).clone();
        for (g, img) in &subs {
            l = l.substitute_generator(*g, img);
        }
        let l = l.mul(&Fraction::from_poly(DiffPoly::constant(n, scale.clone())));
        let r = rhs.get(&i).unwrap_or(&zero);
        let report = check_rational(&l, r, &c_to_j, &module, engine.bounds())?;
        if report.certificate.is_some() {
            certified += 1;
        }
        if !report.passed {
            failed.push(i.to_string());
            residuals.push(format!("d^{i}: {}", report.cleared.to_string()));
        }
    }
    let passed = failed.is_empty();
    Ok(Outcome {
        id: e.id.clone(),
        passed,
        detail: if passed {
            format!("identity holds ({certified} parts on shell)")
        } else {
            format!("fails at orders {}", failed.join(", "))
        },
        residual: (!passed).then(|| residuals.join("; ")),
    })
}
