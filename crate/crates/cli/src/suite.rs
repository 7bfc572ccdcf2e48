//! Verification suites, registered by name.

use nfold::preset::Preset;
use nfold::reduction::integral::reduced_conditions;
use nfold::susy::conditions::weights_consistent;
use nfold::susy::{check_j0, conditions_for, ParamAssignment, Stage};

use crate::engine::{lookup_preset, Engine, MAX_N};
use crate::error::CliError;
use crate::golden::{corpus, evaluate, Outcome};

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Checks in a fixed order.
    fn run(&self, engine: &Engine) -> Vec<Outcome>;
}

fn pass(id: impl Into<String>, detail: impl Into<String>) -> Outcome {
    Outcome {
        id: id.into(),
        passed: true,
        detail: detail.into(),
        residual: None,
    }
}

fn fail(id: impl Into<String>, detail: impl Into<String>) -> Outcome {
    Outcome {
        id: id.into(),
        passed: false,
        detail: detail.into(),
        residual: None,
    }
}

fn errored(id: impl Into<String>, e: CliError) -> Outcome {
    fail(id, format!("error: {e}"))
}

/// The `(preset, N)` pairs with fixed parameters.
fn instances() -> Vec<(&'static dyn Preset, u32)> {
    let paper = lookup_preset("paper").expect("registered");
    let alt = lookup_preset("footnote-alt").expect("registered");
    vec![(paper, 2), (paper, 3), (paper, 4), (alt, 4)]
}

pub struct Goldens;

impl Suite for Goldens {
    fn name(&self) -> &'static str {
        "goldens"
    }

    fn summary(&self) -> &'static str {
        "every corpus entry against the engine"
    }

    fn run(&self, engine: &Engine) -> Vec<Outcome> {
        match corpus() {
            Err(e) => vec![errored("corpus", e)],
            Ok(entries) => entries
                .iter()
                .map(|e| evaluate(engine, e).unwrap_or_else(|x| errored(e.id.clone(), x)))
                .collect(),
        }
    }
}

pub struct Products;

impl Suite for Products {
    fn name(&self) -> &'static str {
        "products"
    }

    fn summary(&self) -> &'static str {
        "P∓P± equivalent to the polynomial in H± for N = 2, 3, 4"
    }

    fn run(&self, engine: &Engine) -> Vec<Outcome> {
        let paper = lookup_preset("paper").expect("registered");
        (2..=4)
            .map(|n| {
                let id = format!("products:N={n}");
                match engine.integrals(n, paper) {
                    Ok(rep) => {
                        let parts: Vec<String> = rep
                            .sides
                            .iter()
                            .map(|s| {
                                let orders: Vec<String> = s
                                    .equivalence
                                    .certificates
                                    .keys()
                                    .map(|i| i.to_string())
                                    .collect();
                                format!("{} certified at orders [{}]", s.label, orders.join(", "))
                            })
                            .collect();
                        pass(id, parts.join("; "))
                    }
                    Err(e) => errored(id, e),
                }
            })
            .collect()
    }
}

pub struct Integrals;

impl Suite for Integrals {
    fn name(&self) -> &'static str {
        "integrals"
    }

    fn summary(&self) -> &'static str {
        "J_k' = Σ L_kj(Ī_j) + Σ M_ki(J_i − C_i) and the weights of L_kj"
    }

    fn run(&self, engine: &Engine) -> Vec<Outcome> {
        let mut out = Vec::new();
        for (preset, n) in instances() {
            let prefix = format!("{}:N={n}", preset.name());
            let rep = match engine.integrals(n, preset) {
                Ok(r) => r,
                Err(e) => {
                    out.push(errored(prefix, e));
                    continue;
                }
            };
            let cs = match engine.conditions(n, Stage::Transformed, preset) {
                Ok(c) => c,
                Err(e) => {
                    out.push(errored(prefix, e));
                    continue;
                }
            };
            for (idx, ic) in rep.integrals.iter().enumerate() {
                let id = format!("{prefix}:J{}", ic.k);
                let known = &rep.integrals[..idx];
                let conds = reduced_conditions(&cs, known);
                let residual = match ic.residual(&conds, known) {
                    Ok(r) => r,
                    Err(e) => {
                        out.push(errored(id, e.into()));
                        continue;
                    }
                };
                let mut bad = Vec::new();
                for (j, l) in &ic.multipliers {
                    // Ring weight 2k + 1 + j − N, so that L_kj Ī_j has
                    // the weight 2k + 3 of J_k'.
                    let want = 2 * ic.k as i64 + 1 + *j as i64 - n as i64;
                    match l.weight_of() {
                        Ok(w) if w == want => {}
                        Ok(w) => bad.push(format!("L{}{} has weight {w}, expected {want}", ic.k, j)),
                        Err(e) => bad.push(format!("L{}{}: {e}", ic.k, j)),
                    }
                }
                if !residual.is_zero() {
                    out.push(Outcome {
                        id,
                        passed: false,
                        detail: "derivative identity fails".into(),
                        residual: Some(residual.to_string()),
                    });
                } else if !bad.is_empty() {
                    out.push(fail(id, bad.join("; ")));
                } else {
                    let used: Vec<String> =
                        ic.multipliers.keys().map(|j| format!("L{}{}", ic.k, j)).collect();
                    out.push(pass(id, format!("identity holds with {}", used.join(", "))));
                }
            }
        }
        out
    }
}

pub struct Weights;

impl Suite for Weights {
    fn name(&self) -> &'static str {
        "weights"
    }

    fn summary(&self) -> &'static str {
        "every golden homogeneous and round-tripping, derived conditions of weight N+2−k"
    }

    fn run(&self, _engine: &Engine) -> Vec<Outcome> {
        let mut out = Vec::new();
        match corpus() {
            Err(e) => out.push(errored("corpus", e)),
            Ok(entries) => {
                for e in &entries {
                    let id = format!("weight:{}", e.id);
                    let checked = e.expression.decode().and_then(|v| {
                        let w = v.weight()?;
                        v.round_trips(e.n)?;
                        Ok(w)
                    });
                    out.push(match checked {
                        Ok(w) => pass(id, format!("weight {w}")),
                        Err(x) => fail(id, x),
                    });
                }
            }
        }
        for n in 2..=MAX_N {
            for stage in [Stage::Raw, Stage::Eliminated] {
                let id = format!("conditions:N={n}:{stage}");
                out.push(match conditions_for(n, stage, &ParamAssignment::new()) {
                    Ok(cs) if weights_consistent(&cs) => pass(id, "I_k of weight N+2−k"),
                    Ok(_) => fail(id, "inhomogeneous condition"),
                    Err(e) => errored(id, e.into()),
                });
            }
        }
        out
    }
}

pub struct JZero;

impl Suite for JZero {
    fn name(&self) -> &'static str {
        "jzero"
    }

    fn summary(&self) -> &'static str {
        "J0' = (1/N) w_{N-1} I_N − (1/N) I_{N-1} for N = 2..6"
    }

    fn run(&self, _engine: &Engine) -> Vec<Outcome> {
        (2..=6)
            .map(|n| {
                let id = format!("jzero:N={n}");
                match check_j0(n) {
                    Ok(r) if r.passed => {
                        let weights: Vec<String> = r
                            .multiplier_weights
                            .iter()
                            .map(|(j, w)| format!("L0{j}: {w}"))
                            .collect();
                        pass(
                            id,
                            format!(
                                "weights {}; the +w' form of J0 leaves {}",
                                weights.join(", "),
                                r.printed_residual
                            ),
                        )
                    }
                    Ok(r) => Outcome {
                        id,
                        passed: false,
                        detail: "identity fails".into(),
                        residual: Some(r.residual.to_string()),
                    },
                    Err(e) => errored(id, e.into()),
                }
            })
            .collect()
    }
}

pub struct All;

impl Suite for All {
    fn name(&self) -> &'static str {
        "all"
    }

    fn summary(&self) -> &'static str {
        "every other suite in order"
    }

    fn run(&self, engine: &Engine) -> Vec<Outcome> {
        SUITES
            .iter()
            .filter(|s| s.name() != "all")
            .flat_map(|s| s.run(engine))
            .collect()
    }
}

static SUITES: &[&dyn Suite] = &[&All, &Goldens, &Products, &Integrals, &Weights, &JZero];

pub fn suites() -> &'static [&'static dyn Suite] {
    SUITES
}

pub fn lookup_suite(name: &str) -> Option<&'static dyn Suite> {
    SUITES.iter().copied().find(|s| s.name() == name)
}
