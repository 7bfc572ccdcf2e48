//! Transformation parameters and the simplified constraints.

use nfold::diffring::{parse, q, DiffPoly, Monomial, Substitution, Q};
use nfold::preset::preset;
use nfold::susy::params::parameter_coefficient;
use nfold::susy::{
    assignment_from_names, conditions_for, solve_parameters, symbolic_transformed,
    ParamAssignment, Stage,
};

fn values(n: u32, pairs: &[(&str, Q)]) -> ParamAssignment {
    assignment_from_names(n, pairs.iter().map(|(k, v)| (*k, v.clone()))).unwrap()
}

fn paper_values(n: u32) -> ParamAssignment {
    match n {
        2 => values(2, &[("alpha0", q(-1, 4))]),
        3 => values(
            3,
            &[("alpha1", q(1, 1)), ("beta1", q(-1, 1)), ("beta2", q(-1, 1)), ("beta3", q(1, 1))],
        ),
        4 => values(
            4,
            &[
                ("alpha1", q(3, 2)),
                ("beta1", q(-9, 4)),
                ("beta2", q(-1, 1)),
                ("beta3", q(3, 2)),
                ("gamma1", q(-1, 2)),
                ("gamma2", q(1, 1)),
                ("gamma3", q(11, 8)),
                ("gamma4", q(-1, 1)),
                ("gamma5", q(-1, 4)),
                ("gamma6", q(1, 2)),
                ("gamma7", q(-3, 8)),
            ],
        ),
        _ => unreachable!(),
    }
}

fn footnote_values() -> ParamAssignment {
    values(
        4,
        &[
            ("alpha1", q(0, 1)),
            ("beta1", q(-9, 4)),
            ("beta2", q(-3, 4)),
            ("beta3", q(1, 4)),
            ("gamma1", q(-1, 2)),
            ("gamma2", q(-1, 2)),
            ("gamma3", q(-1, 8)),
            ("gamma4", q(-1, 1)),
            ("gamma5", q(-1, 4)),
            ("gamma6", q(0, 1)),
            ("gamma7", q(1, 16)),
        ],
    )
}

fn specialize(n: u32, a: &ParamAssignment) -> Substitution {
    a.iter().fold(Substitution::identity(n), |s, (g, v)| {
        s.with_value(*g, v.clone()).unwrap()
    })
}

/// The coefficient of `m` in `Ī_k`, evaluated at `a` without the solver.
fn target_value(n: u32, symbolic: &[(u32, DiffPoly)], k: u32, m: &Monomial, a: &ParamAssignment) -> Q {
    let p = &symbolic.iter().find(|(j, _)| *j == k).unwrap().1;
    specialize(n, a).apply(&parameter_coefficient(p, m)).as_constant().unwrap()
}

#[test]
fn paper_values_are_the_unique_solutions() {
    let paper = preset("paper").unwrap();
    for n in 2..=4 {
        let symbolic = symbolic_transformed(n).unwrap();
        let targets = paper.targets(n);
        let sol = solve_parameters(n, &symbolic, &targets).unwrap();
        assert_eq!(sol.point(), Some(paper_values(n)), "N={n}");
        assert_eq!(paper.params(n).unwrap(), paper_values(n));
        for (k, m) in &targets {
            assert_eq!(target_value(n, &symbolic, *k, m, &paper_values(n)), q(0, 1));
        }
    }
}

#[test]
fn specializing_symbolic_conditions_matches_direct_transformation() {
    for n in 2..=4 {
        let a = paper_values(n);
        let s = specialize(n, &a);
        let direct = conditions_for(n, Stage::Transformed, &a).unwrap();
        for (k, p) in symbolic_transformed(n).unwrap() {
            assert_eq!(&s.apply(&p), direct.get(k).unwrap(), "N={n}, Ibar_{k}");
        }
    }
}

#[test]
fn each_paper_value_is_forced() {
    // Moving any one parameter revives some target monomial.
    let paper = preset("paper").unwrap();
    for n in 2..=4 {
        let symbolic = symbolic_transformed(n).unwrap();
        for g in paper_values(n).keys() {
            let mut a = paper_values(n);
            *a.get_mut(g).unwrap() += q(1, 3);
            let revived = paper
                .targets(n)
                .iter()
                .any(|(k, m)| target_value(n, &symbolic, *k, m, &a) != q(0, 1));
            assert!(revived, "N={n}: {}", g.plain());
        }
    }
}

#[test]
fn footnote_values_solve_their_target_set() {
    let alt = preset("footnote-alt").unwrap();
    let symbolic = symbolic_transformed(4).unwrap();
    let targets = alt.targets(4);
    for (k, m) in &targets {
        assert_eq!(target_value(4, &symbolic, *k, m, &footnote_values()), q(0, 1));
    }
    let sol = solve_parameters(4, &symbolic, &targets).unwrap();
    assert!(sol.contains(&footnote_values()));
    assert_eq!(alt.params(4).unwrap(), footnote_values());
    // The target set is quadratic in alpha1; the other root is a solution too.
    let points = sol.points();
    assert_eq!(points.len(), 2);
    for p in &points {
        for (k, m) in &targets {
            assert_eq!(target_value(4, &symbolic, *k, m, p), q(0, 1));
        }
    }
    let alphas: Vec<Q> = points
        .iter()
        .map(|p| p.iter().find(|(g, _)| g.plain() == "alpha1").unwrap().1.clone())
        .collect();
    assert!(alphas.contains(&q(0, 1)) && alphas.contains(&q(-3, 8)));
    // The paper preset is not a solution of the footnote-alt target set.
    assert!(!sol.contains(&paper_values(4)));
}

#[test]
fn simplified_constraints() {
    let get = |n: u32, a: &ParamAssignment, k: u32| {
        conditions_for(n, Stage::Transformed, a).unwrap().get(k).unwrap().clone()
    };
    let p3 = paper_values(3);
    assert_eq!(get(3, &p3, 1), parse("u0' + 2*w2*u1'", 3).unwrap());
    assert_eq!(
        get(3, &p3, 0),
        parse("u1''' + 24*u1*u1' - 4*w2^2*u1' + 2*w2'*u0", 3).unwrap()
    );
    let p4 = paper_values(4);
    assert_eq!(get(4, &p4, 2), parse("4*u1' + w3*u2'", 4).unwrap());
    assert_eq!(get(4, &p4, 1), parse("u0'", 4).unwrap());
    let alt = footnote_values();
    assert_eq!(get(4, &alt, 2), parse("4*u1' - w3'*u2", 4).unwrap());
    assert_eq!(get(4, &alt, 1), parse("u0'", 4).unwrap());
    // N = 2: the quadratic-derivative term cancels at alpha0 = -1/4.
    let p2 = paper_values(2);
    assert_eq!(
        get(2, &p2, 0).scale(&q(-4, 1)),
        parse("2*w1*u0' + 4*w1'*u0 + w1'''", 2).unwrap()
    );
}

#[test]
fn transformed_conditions_keep_their_weights() {
    for n in 2..=4 {
        let cs = conditions_for(n, Stage::Transformed, &paper_values(n)).unwrap();
        for c in &cs.conditions {
            assert_eq!(c.poly.weight_of().unwrap(), n as i64 + 2 - c.k as i64, "N={n}");
        }
    }
}
