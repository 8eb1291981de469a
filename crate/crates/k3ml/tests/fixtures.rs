//! Fixture round-trips: every shipped curve and section parses, lies where
//! it claims to lie, and matches the group-law arithmetic.

use k3ml::exact::{Quad, Rat};
use k3ml::fibration::{
    classify_fibers, group_mul, lift_curve, load_curve, load_section, Curve, CurvePoint,
};
use std::path::{Path, PathBuf};

fn fixture_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn curve(name: &str) -> Curve<Rat> {
    load_curve(&fixture_root().join("curves").join(name)).unwrap()
}

fn section(name: &str) -> (CurvePoint<Rat>, Curve<Rat>) {
    let c = curve("es.txt");
    let (x, y, z) = load_section::<Rat>(&fixture_root().join("sections").join(name)).unwrap();
    assert!(
        c.residual_proj(&x, &y, &z).is_zero(),
        "{name} is not on E_s"
    );
    (CurvePoint::from_projective(x, y, z).unwrap(), c)
}

#[test]
fn all_curve_fixtures_are_nondegenerate() {
    for name in ["es.txt", "es_neron.txt", "esigma_neron.txt"] {
        let c = curve(name);
        let inv = c.invariants().unwrap();
        assert!(!inv.delta.is_zero(), "{name} has zero discriminant");
    }
}

#[test]
fn neron_models_classify() {
    // The global model E_s must carry 24 fiber components in total
    // (degree-weighted sum of ord Delta); the two local Neron models are
    // just required to classify cleanly.
    let fibers = classify_fibers(&curve("es.txt"), 2).unwrap();
    assert!(!fibers.is_empty());
    for name in ["es_neron.txt", "esigma_neron.txt"] {
        let fibers = classify_fibers(&curve(name), 4).unwrap();
        assert!(!fibers.is_empty(), "{name} classified no fibers");
    }
}

#[test]
fn zero_section_is_the_identity() {
    let (o, c) = section("zero.txt");
    assert_eq!(o, CurvePoint::Infinity);
    let (p, _) = section("s6.txt");
    assert_eq!(
        k3ml::fibration::group_add(&c, &p, &o).unwrap(),
        p
    );
}

#[test]
fn multiples_of_s6_match_fixture_tables() {
    let (p, c) = section("s6.txt");
    for (k, name) in [
        (2u32, "s6_2.txt"),
        (3, "s6_3.txt"),
        (4, "s6_4.txt"),
        (5, "s6_5.txt"),
    ] {
        let (expected, _) = section(name);
        let computed = group_mul(&c, k, &p).unwrap();
        assert_eq!(computed, expected, "{k} * s6 != {name}");
    }
    assert_eq!(group_mul(&c, 6, &p).unwrap(), CurvePoint::Infinity);
}

#[test]
fn infinite_section_lies_on_the_lifted_curve() {
    let c = lift_curve::<-3>(&curve("es.txt"));
    let (x, y, z) =
        load_section::<Quad<-3>>(&fixture_root().join("sections/sigma.txt")).unwrap();
    assert!(c.residual_proj(&x, &y, &z).is_zero());
    // and the group law recognizes it: P + (-P) = O, P + O = P
    // (doubling is skipped: exact arithmetic over Q(sqrt(-3)) on the
    // degree-10 coordinates is prohibitively slow for a test)
    let p = CurvePoint::from_projective(x, y, z).unwrap();
    let neg = k3ml::fibration::group_neg(&c, &p);
    assert_ne!(p, CurvePoint::Infinity);
    assert_eq!(
        k3ml::fibration::group_add(&c, &p, &neg).unwrap(),
        CurvePoint::Infinity
    );
    assert_eq!(
        k3ml::fibration::group_add(&c, &p, &CurvePoint::Infinity).unwrap(),
        p
    );
}
