//! Acceptance criteria 1 to 10, one line each.

#[path = "../../core/tests/support/props.rs"]
mod props;

use std::collections::BTreeSet;
use std::process::ExitCode;

use nfold::diffring::{q, qi, Generator, Substitution, Q};
use nfold::preset::preset;
use nfold::reduction::Bounds;
use nfold::susy::general::{
    minus_12n_condition, minus_4n_condition, second_condition_doubled, top_condition,
};
use nfold::susy::{
    assignment_from_names, build_system, check_j0, derive_conditions, eliminate_potentials,
    general_potentials, solve_parameters, symbolic_transformed, ParamAssignment, Potentials,
};
use nfold_cli::engine::Engine;
use nfold_cli::golden::{corpus, evaluate, find};
use nfold_cli::suite::lookup_suite;

/// Failures of one criterion; empty means it passed.
type Verdict = Vec<String>;

fn goldens(engine: &Engine, ids: &[&str]) -> Verdict {
    let mut bad = Vec::new();
    for id in ids {
        match find(id).and_then(|e| evaluate(engine, &e)) {
            Ok(o) if o.passed => {}
            Ok(o) => bad.push(format!("{id}: {}", o.detail)),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    bad
}

fn suite(engine: &Engine, name: &str) -> Verdict {
    lookup_suite(name)
        .expect("registered suite")
        .run(engine)
        .into_iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{}: {}", o.id, o.detail))
        .collect()
}

const CONDITIONS: &[&str] = &[
    "2fc1", "2fc2", "2fc3", "3fc1", "3fc2", "3fc3", "3fc4", "4fc1", "4fc2", "4fc3", "4fc4", "4fc5",
];

const ELIMINATED: &[&str] = &[
    "2fc3p", "3fc3p", "3fc4p", "4fc3p", "4fc4p", "4fc5p", "2fV+", "2fV-", "3fV+", "3fV-", "4fV+",
    "4fV-", "2fP+", "2fP-", "3fP+", "3fP-", "4fP+", "4fP-",
];

const ANSATZ: &[&str] = &[
    "2ftf", "P2+", "P2-", "V2+", "V2-", "2fc3pp", "3ftf-w1", "3ftf-w0", "3fPV-P+", "3fPV-P-",
    "3fPV-V+", "3fPV-V-", "3fc3g", "3fc4g", "4ftf-w2", "4ftf-w1", "4ftf-w0", "4fPV-P+", "4fPV-P-",
    "4fPV-V+", "4fPV-V-", "4fc3g", "4fc4g", "4fc5g",
];

const SIMPLIFIED: &[&str] = &["2fc3pp-a0", "3fc3pp", "3fc4pp", "4fc3pp", "4fc4pp", "4fc5pp"];

const INTEGRALS: &[&str] = &[
    "2fC1", "2fL10", "3fC1", "3fL10", "3fL11", "3fC2", "3fL21", "4fC1", "4fL11", "4fC2", "4fL20",
    "4fC3", "4fL30", "alt-C1", "alt-L11", "alt-C2", "alt-L20", "alt-L22", "alt-C3", "alt-L30",
    "alt-L32", "alt-c3", "alt-c4", "alt-c5",
];

const PRODUCTS: &[&str] = &["2fP-P+", "2fP+P-", "3fP-P+", "3fP+P-", "f_plus", "f_minus"];

const RATIONAL: &[&str] = &[
    "2fu0", "2fP+final", "2fP-final", "2fV+final", "2fV-final", "3fu0-a", "3fu0-b", "3fP+w2u1",
    "3fP-w2u1", "3fV+w2u1", "3fV-w2u1", "3fP+u1u0", "3fP-u1u0", "3fV+u1u0", "3fV-u1u0", "4fu1",
    "4fu1p", "4fPVp-P+", "4fPVp-P-", "4fPVp-V+", "4fPVp-V-",
];

fn general_n() -> Verdict {
    let mut bad = Vec::new();
    for n in 2..=6u32 {
        let nn = n as i64;
        let raw = derive_conditions(&build_system(n, Potentials::Symbolic).unwrap()).unwrap();
        let elim = eliminate_potentials(&raw).unwrap();
        let at = |set: &nfold::susy::ConditionSet, k: u32| set.get(k).unwrap().clone();
        if top_condition(n) != at(&raw, n) {
            bad.push(format!("N={n}: I_N"));
        }
        if second_condition_doubled(n) != at(&raw, n - 1).scale(&qi(2)) {
            bad.push(format!("N={n}: 2I_(N-1)"));
        }
        let (vp, vm) = general_potentials(n).unwrap();
        let s = Substitution::identity(n)
            .with(Generator::v_plus(), vp)
            .unwrap()
            .with(Generator::v_minus(), vm)
            .unwrap();
        if !s.apply(&at(&raw, n)).is_zero() || !s.apply(&at(&raw, n - 1)).is_zero() {
            bad.push(format!("N={n}: potentials leave I_N or I_(N-1)"));
        }
        if minus_4n_condition(n) != at(&elim, n - 2).scale(&qi(-4 * nn)) {
            bad.push(format!("N={n}: -4N I_(N-2)"));
        }
        if n >= 3 && minus_12n_condition(n) != at(&elim, n - 3).scale(&qi(-12 * nn)) {
            bad.push(format!("N={n}: -12N I_(N-3)"));
        }
    }
    bad
}

fn j_zero() -> Verdict {
    let mut bad = Vec::new();
    for n in 2..=6u32 {
        match check_j0(n) {
            Ok(r) if r.passed => {
                for (j, w) in &r.multiplier_weights {
                    // [L^{N-j-1}] in inverse-length weight.
                    if *w != -(n as i64 - *j as i64 - 1) {
                        bad.push(format!("N={n}: L0{j} weight {w}"));
                    }
                }
            }
            Ok(r) => bad.push(format!("N={n}: residual {}", r.residual)),
            Err(e) => bad.push(format!("N={n}: {e}")),
        }
    }
    bad
}

fn named(n: u32, pairs: &[(&str, Q)]) -> ParamAssignment {
    assignment_from_names(n, pairs.iter().map(|(k, v)| (*k, v.clone()))).unwrap()
}

fn parameters() -> Verdict {
    let mut bad = Vec::new();
    let expected = [
        (2, named(2, &[("alpha0", q(-1, 4))])),
        (
            3,
            named(3, &[("alpha1", qi(1)), ("beta1", qi(-1)), ("beta2", qi(-1)), ("beta3", qi(1))]),
        ),
        (
            4,
            named(
                4,
                &[
                    ("alpha1", q(3, 2)),
                    ("beta1", q(-9, 4)),
                    ("beta2", qi(-1)),
                    ("beta3", q(3, 2)),
                    ("gamma1", q(-1, 2)),
                    ("gamma2", qi(1)),
                    ("gamma3", q(11, 8)),
                    ("gamma4", qi(-1)),
                    ("gamma5", q(-1, 4)),
                    ("gamma6", q(1, 2)),
                    ("gamma7", q(-3, 8)),
                ],
            ),
        ),
    ];
    let paper = preset("paper").unwrap();
    for (n, want) in &expected {
        let symbolic = symbolic_transformed(*n).unwrap();
        match solve_parameters(*n, &symbolic, &paper.targets(*n)) {
            Ok(sol) if sol.point().as_ref() == Some(want) => {}
            Ok(sol) => bad.push(format!("N={n}: {} branches, not the expected point", sol.branches.len())),
            Err(e) => bad.push(format!("N={n}: {e}")),
        }
    }
    let footnote = named(
        4,
        &[
            ("alpha1", qi(0)),
            ("beta1", q(-9, 4)),
            ("beta2", q(-3, 4)),
            ("beta3", q(1, 4)),
            ("gamma1", q(-1, 2)),
            ("gamma2", q(-1, 2)),
            ("gamma3", q(-1, 8)),
            ("gamma4", qi(-1)),
            ("gamma5", q(-1, 4)),
            ("gamma6", qi(0)),
            ("gamma7", q(1, 16)),
        ],
    );
    let alt = preset("footnote-alt").unwrap();
    match solve_parameters(4, &symbolic_transformed(4).unwrap(), &alt.targets(4)) {
        Ok(sol) if sol.contains(&footnote) => {}
        Ok(_) => bad.push("footnote values not in the solution set".into()),
        Err(e) => bad.push(format!("footnote: {e}")),
    }
    bad
}

fn properties() -> Verdict {
    props::all()
        .into_iter()
        .filter_map(|(name, check)| check().err().map(|e| format!("{name}: {e}")))
        .collect()
}

fn coverage() -> Verdict {
    let listed: BTreeSet<&str> = [CONDITIONS, ELIMINATED, ANSATZ, SIMPLIFIED, INTEGRALS, PRODUCTS, RATIONAL]
        .concat()
        .into_iter()
        .collect();
    match corpus() {
        Ok(entries) => entries
            .iter()
            .filter(|e| !listed.contains(e.id.as_str()))
            .map(|e| format!("{} is in no criterion", e.id))
            .collect(),
        Err(e) => vec![e.to_string()],
    }
}

fn main() -> ExitCode {
    let engine = Engine::new(Bounds::default());
    let checks: Vec<(u32, &str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, "condition derivation", Box::new(|| goldens(&engine, CONDITIONS))),
        (2, "potential elimination", Box::new(|| goldens(&engine, ELIMINATED))),
        (3, "general-N formulas", Box::new(general_n)),
        (4, "J0 relation", Box::new(j_zero)),
        (
            5,
            "ansatz and parameters",
            Box::new(|| [goldens(&engine, ANSATZ), parameters()].concat()),
        ),
        (6, "simplified constraints", Box::new(|| goldens(&engine, SIMPLIFIED))),
        (
            7,
            "integral constants",
            Box::new(|| [goldens(&engine, INTEGRALS), suite(&engine, "integrals")].concat()),
        ),
        (
            8,
            "products and equivalence",
            Box::new(|| [goldens(&engine, PRODUCTS), suite(&engine, "products")].concat()),
        ),
        (9, "rational-form checks", Box::new(|| goldens(&engine, RATIONAL))),
        (10, "property suites", Box::new(properties)),
    ];
    let mut failed = 0;
    for (k, name, check) in &checks {
        let bad = check();
        if bad.is_empty() {
            println!("criterion {k} ({name}): PASS");
        } else {
            failed += 1;
            println!("criterion {k} ({name}): FAIL: {}", bad.join("; "));
        }
    }
    let uncovered = coverage();
    if !uncovered.is_empty() {
        failed += 1;
        println!("corpus coverage: FAIL: {}", uncovered.join("; "));
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
