mod support;

use support::props;

#[test]
fn ring_axioms() {
    props::ring_axioms().unwrap();
}

#[test]
fn derivation_axioms() {
    props::derivation_axioms().unwrap();
}

#[test]
fn operator_algebra() {
    props::operator_algebra().unwrap();
}

#[test]
fn transpose_laws() {
    props::transpose_laws().unwrap();
}

#[test]
fn substitute_derive_commutation() {
    props::substitute_derive().unwrap();
}

#[test]
fn weight_homogeneity() {
    props::weight_homogeneity().unwrap();
}

#[test]
fn antiderivative_round_trip() {
    props::antiderivative_round_trip().unwrap();
}

#[test]
fn certificate_reexpansion() {
    props::certificate_reexpansion().unwrap();
}
