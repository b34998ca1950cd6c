use std::path::PathBuf;

use braidcert::reps::{
    bmw_b3_generators, bmw_one_dim_reps, burau_generators, burau_generators_textbook, det_squier_closed_form, load_representation,
    parse_repz, squier_form, RepError, Repz,
};
use braidcert::ring::{parse_laurent, parse_ratfunc, LaurentPoly};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// `(x^{2n+2} - 1) / (x^n (x^2 - 1))` expanded by hand: `sum_{k=0}^{n} x^{n - 2k}`.
fn det_oracle(n: usize) -> LaurentPoly {
    let terms: Vec<String> = (0..=n).map(|k| format!("x^{}", n as i64 - 2 * k as i64)).collect();
    parse_laurent(&terms.join("+")).unwrap()
}

#[test]
fn burau_relations_and_invariance() {
    for n in 1..=5 {
        let rep = burau_generators(n);
        rep.verify_braid_relations().unwrap();
        assert!(rep.verify_invariance(&squier_form(n)).unwrap(), "n = {n}");
        assert!(squier_form(n).star().same_entries(&squier_form(n)));
    }
}

#[test]
fn squier_determinant_matches_geometric_sum() {
    for n in 1..=8 {
        let det = squier_form(n).determinant();
        assert_eq!(det.as_poly(), Some(&det_oracle(n)), "n = {n}");
        assert_eq!(det_squier_closed_form(n), det_oracle(n));
    }
}

#[test]
fn textbook_convention_is_a_representation_without_the_form() {
    let rep = burau_generators_textbook(3);
    rep.verify_braid_relations().unwrap();
    assert!(!rep.verify_invariance(&squier_form(3)).unwrap());
}

#[test]
fn bmw_fixtures() {
    let rep = bmw_b3_generators().unwrap();
    assert_eq!(rep.dim(), 3);
    for g in bmw_one_dim_reps() {
        assert!(g.1.is_unitary(&rep.involution().clone()), "{}", g.0);
    }
}

#[test]
fn repz_files() {
    let rep = load_representation(&data("burau3.repz"), true).unwrap();
    assert_eq!(rep.generators(), burau_generators(3).generators());
    let repz = Repz::load(&data("burau3.repz")).unwrap();
    assert!(repz.form.unwrap().same_entries(&squier_form(3)));
    match load_representation(&data("bad_relation.repz"), true) {
        Err(RepError::RelationFailure(r)) => assert!(r.contains("s1 s2 s1")),
        other => panic!("expected a relation failure, got {other:?}"),
    }
}

#[test]
fn repz_parse_errors_carry_positions() {
    let src = "dim 2\nvars x!\ngen 1\nx; y\n0; 1\n";
    match parse_repz(src) {
        Err(RepError::Parse { line, column, message }) => {
            assert_eq!((line, column), (4, 4));
            assert!(message.contains("'y'"));
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_repz("dim 2\ngen 1\nx; 1\n"), Err(RepError::Parse { line: 3, .. })));
}

#[test]
fn canonical_text_is_a_fixed_point() {
    let t = Repz::from_parts(Some(&burau_generators(4)), Some(&squier_form(4))).to_text();
    assert_eq!(parse_repz(&t).unwrap().to_text(), t);
    assert_eq!(parse_ratfunc("x + x^-1").unwrap(), squier_form(1).get(0, 0).clone());
}
