//! Randomized property checks, each over a fixed-seed run of 1000 cases.
//!
//! Shared by the core property tests and the acceptance target.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nfold::diffop::DiffOperator;
use nfold::diffring::{q, DiffPoly, Generator, Monomial, Substitution};
use nfold::reduction::antiderivative::antiderivative;
use nfold::reduction::certificate::{expand, Certificate, CertificateJson};
use nfold::reduction::membership::ideal_membership;
use nfold::reduction::Bounds;
use nfold::susy::{ansatz_substitution, parameter_names, ParamAssignment};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 1000;

fn runner(seed: u8) -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        max_global_rejects: 100_000,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn generator(n: u32, max_order: u32) -> BoxedStrategy<Generator> {
    prop_oneof![
        (0..n, 0..=max_order).prop_map(|(k, m)| Generator::w(k).with_order(m)),
        (0..n, 0..=max_order).prop_map(|(k, m)| Generator::u(k).with_order(m)),
        (0..=max_order).prop_map(|m| Generator::v_plus().with_order(m)),
        (0..=max_order).prop_map(|m| Generator::v_minus().with_order(m)),
        (0..n).prop_map(Generator::c),
    ]
    .boxed()
}

fn monomial(n: u32, max_order: u32) -> BoxedStrategy<Monomial> {
    prop::collection::vec((generator(n, max_order), 1..=2u32), 0..=3)
        .prop_map(Monomial::from_factors)
        .boxed()
}

fn poly(n: u32, max_order: u32, max_terms: usize) -> BoxedStrategy<DiffPoly> {
    prop::collection::vec((monomial(n, max_order), -6i64..=6, 1i64..=4), 0..=max_terms)
        .prop_map(move |ts| DiffPoly::from_terms(n, ts.into_iter().map(|(m, a, b)| (m, q(a, b)))))
        .boxed()
}

/// The part of a random polynomial with the weight of its first term.
fn homogeneous(n: u32, max_order: u32, max_weight: i64) -> BoxedStrategy<DiffPoly> {
    poly(n, max_order, 5)
        .prop_map(move |p| {
            let w = p.terms().next().and_then(|(m, _)| m.weight(n));
            DiffPoly::from_terms(
                n,
                p.terms()
                    .filter(|(m, _)| m.weight(n) == w)
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .prop_filter("nonzero, bounded weight", move |p| {
            !p.is_zero() && p.weight_of().map_or(false, |w| (1..=max_weight).contains(&w))
        })
        .boxed()
}

fn operator(n: u32) -> BoxedStrategy<DiffOperator> {
    prop::collection::vec((0..=2u32, poly(n, 2, 3)), 0..=3)
        .prop_map(move |cs| DiffOperator::from_coeffs(n, cs))
        .boxed()
}

fn report(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn ring_axioms() -> Result<(), String> {
    let s = (poly(3, 2, 4), poly(3, 2, 4), poly(3, 2, 4));
    report(runner(1).run(&s, |(a, b, c)| {
        let n = a.ambient_n();
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &DiffPoly::one(n), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
        Ok(())
    }))
}

pub fn derivation_axioms() -> Result<(), String> {
    let s = (poly(3, 2, 4), poly(3, 2, 4), 0..3u32);
    report(runner(2).run(&s, |(a, b, k)| {
        let n = a.ambient_n();
        prop_assert_eq!((&a + &b).derive(), &a.derive() + &b.derive());
        prop_assert_eq!((&a * &b).derive(), &(&a.derive() * &b) + &(&a * &b.derive()));
        prop_assert_eq!(a.derive_n(2), a.derive().derive());
        prop_assert!(DiffPoly::var(n, Generator::c(k)).derive().is_zero());
        prop_assert!(DiffPoly::constant(n, q(3, 7)).derive().is_zero());
        Ok(())
    }))
}

pub fn operator_algebra() -> Result<(), String> {
    let s = (operator(3), operator(3), operator(3), poly(3, 2, 3));
    report(runner(3).run(&s, |(a, b, c, f)| {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&(&b + &c)), &a.compose(&b) + &a.compose(&c));
        Ok(())
    }))
}

pub fn transpose_laws() -> Result<(), String> {
    let s = (operator(3), operator(3));
    report(runner(4).run(&s, |(a, b)| {
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        prop_assert_eq!(a.compose(&b).transpose(), b.transpose().compose(&a.transpose()));
        prop_assert_eq!((&a + &b).transpose(), &a.transpose() + &b.transpose());
        Ok(())
    }))
}

fn base_generator(n: u32) -> BoxedStrategy<Generator> {
    prop_oneof![
        (0..n).prop_map(Generator::w),
        (0..n).prop_map(Generator::u),
        Just(Generator::v_plus()),
        Just(Generator::v_minus()),
        (0..n).prop_map(Generator::c),
    ]
    .boxed()
}

pub fn substitute_derive() -> Result<(), String> {
    let images = prop::collection::vec((base_generator(3), poly(3, 1, 3)), 1..=3);
    let s = (images, poly(3, 2, 4), poly(3, 2, 3));
    report(runner(5).run(&s, |(images, p, r)| {
        let mut sub = Substitution::identity(3);
        for (g, img) in images {
            // Constants are fixed by the derivation, so their images must be too.
            let img = if g.is_constant() {
                DiffPoly::constant(3, img.constant_term())
            } else {
                img
            };
            sub.insert(g, img).map_err(|e| TestCaseError::fail(e.to_string()))?;
        }
        prop_assert_eq!(sub.apply(&p.derive()), sub.apply(&p).derive());
        prop_assert_eq!(sub.apply(&(&p * &r)), &sub.apply(&p) * &sub.apply(&r));
        prop_assert_eq!(sub.apply(&(&p + &r)), &sub.apply(&p) + &sub.apply(&r));
        Ok(())
    }))
}

fn ansatz(n: u32) -> BoxedStrategy<(u32, ParamAssignment)> {
    let names = parameter_names(n).expect("N = 2, 3, 4");
    prop::collection::vec((-8i64..=8, 1i64..=8), names.len())
        .prop_map(move |vals| {
            let a = names
                .iter()
                .copied()
                .zip(vals.into_iter().map(|(x, y)| q(x, y)))
                .collect();
            (n, a)
        })
        .boxed()
}

pub fn weight_homogeneity() -> Result<(), String> {
    let params = prop_oneof![ansatz(2), ansatz(3), ansatz(4)];
    let s = (homogeneous(4, 2, 12), homogeneous(4, 2, 12), params);
    report(runner(6).run(&s, |(p, r, (n, a))| {
        let wp = p.weight_of().map_err(|e| TestCaseError::fail(e.to_string()))?;
        let wr = r.weight_of().map_err(|e| TestCaseError::fail(e.to_string()))?;
        let dp = p.derive();
        if !dp.is_zero() {
            prop_assert_eq!(dp.weight_of().ok(), Some(wp + 1));
        }
        prop_assert_eq!((&p * &r).weight_of().ok(), Some(wp + wr));
        let op = DiffOperator::multiply(r.clone()).compose(&DiffOperator::d_pow(4, 1));
        let applied = op.apply(&p);
        if !applied.is_zero() {
            prop_assert_eq!(applied.weight_of().ok(), Some(wp + wr + 1));
        }
        // The ansatz maps w_k to weight-matched polynomials in u and w.
        let sub = ansatz_substitution(n, &a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(sub.is_weight_preserving());
        let x = DiffPoly::var(n, Generator::w(0).with_order(1))
            .pow(2)
            .checked_mul(&DiffPoly::var(n, Generator::w(n - 1)))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let wx = x.weight_of().ok();
        let img = sub.apply(&x);
        prop_assert!(img.is_zero() || img.weight_of().ok() == wx);
        Ok(())
    }))
}

pub fn antiderivative_round_trip() -> Result<(), String> {
    let s = homogeneous(2, 2, 6);
    report(runner(7).run(&s, |r| {
        let p = r.derive();
        let d = antiderivative(&p, Bounds::default())
            .map_err(|e| TestCaseError::fail(format!("{p}: {e}")))?;
        let back = d
            .antiderivative()
            .ok_or_else(|| TestCaseError::fail("no antiderivative"))?;
        prop_assert_eq!(back.derive(), p);
        // Antiderivatives are unique up to constants.
        prop_assert!((back - &r).derive().is_zero());
        Ok(())
    }))
}

pub fn certificate_reexpansion() -> Result<(), String> {
    let gens = prop::collection::vec(poly(2, 2, 3), 1..=2);
    let terms = prop::collection::vec(((0..2u32, 0..=2u32), poly(2, 1, 2)), 0..=3);
    let s = (gens, terms, homogeneous(2, 1, 3), homogeneous(2, 1, 3));
    report(runner(8).run(&s, |(gens, terms, g, k)| {
        let gens: Vec<(u32, DiffPoly)> = gens.into_iter().enumerate().map(|(j, p)| (j as u32, p)).collect();
        let terms: BTreeMap<(u32, u32), DiffPoly> = terms
            .into_iter()
            .filter(|((j, _), _)| (*j as usize) < gens.len())
            .collect();
        let fail = |e: nfold::reduction::ReductionError| TestCaseError::fail(e.to_string());
        let target = expand(2, &terms, &gens).map_err(fail)?;
        let cert = Certificate::new(target.clone(), terms, &gens).map_err(fail)?;
        let by_ops = cert.operators().iter().fold(DiffPoly::zero(2), |acc, (j, op)| {
            let ij = &gens.iter().find(|(i, _)| i == j).expect("generator").1;
            &acc + &op.apply(ij)
        });
        prop_assert_eq!(&by_ops, &target);
        let json = serde_json::to_string(&cert.to_json()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let back: CertificateJson = serde_json::from_str(&json).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, cert.to_json());
        let off = &target + &DiffPoly::var(2, Generator::v_plus().with_order(7));
        prop_assert!(Certificate::new(off, cert.terms().clone(), &gens).is_err());

        // A product k·g is found in the module of g and re-expands to itself.
        let prod = &k * &g;
        let d = ideal_membership(&prod, &[(0, g.clone())], Bounds::default()).map_err(fail)?;
        let c = d.certificate().ok_or_else(|| TestCaseError::fail("no certificate"))?;
        prop_assert_eq!(expand(2, c.terms(), &[(0, g)]).map_err(fail)?, prod);
        Ok(())
    }))
}

/// Every property with its name, in a fixed order.
pub fn all() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("ring axioms", ring_axioms),
        ("derivation axioms", derivation_axioms),
        ("operator algebra", operator_algebra),
        ("transpose laws", transpose_laws),
        ("substitute-derive commutation", substitute_derive),
        ("weight homogeneity", weight_homogeneity),
        ("antiderivative round trip", antiderivative_round_trip),
        ("certificate re-expansion", certificate_reexpansion),
    ]
}
