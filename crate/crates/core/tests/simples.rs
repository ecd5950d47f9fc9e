use kronheart::spectrum::{finite_simples, report};
use kronheart::tfat::{passing_indecomposables, uniqueness_check};
use kronheart::{FieldSpec, TorsionPairSpec};

const F2: FieldSpec = FieldSpec::PrimeField(2);

fn check(spec: &str) {
    let p = TorsionPairSpec::parse(F2, spec).unwrap();
    let passing = passing_indecomposables(&p, 4, F2).unwrap();
    let expected = finite_simples(&report(&p), F2, 4).unwrap();
    let shifted: Vec<_> = expected.iter().filter(|e| e.1).map(|e| e.0.clone()).collect();
    let plain: Vec<_> = expected.iter().filter(|e| !e.1).map(|e| e.0.clone()).collect();
    assert_eq!(passing.tf_almost_torsion, shifted, "{spec}");
    assert_eq!(passing.t_almost_torsionfree, plain, "{spec}");
    assert!(passing.inconclusive.is_empty(), "{spec}: {:?}", passing.inconclusive);
}

#[test]
fn simples_match_for_empty_set() {
    check("CU:empty");
}

#[test]
fn simples_match_for_one_point() {
    check("CU:{t}");
}

#[test]
fn simples_match_for_two_points() {
    check("CU:{t,inf}");
}

#[test]
fn simples_match_for_cofinite_set() {
    check("CU:co{t}");
}

#[test]
fn simples_match_for_all_points() {
    check("CU:all");
}

#[test]
fn uniqueness_for_point_sets() {
    for spec in ["CU:empty", "CU:{t}", "CU:{t,inf}", "CU:co{t}", "CU:all"] {
        let p = TorsionPairSpec::parse(F2, spec).unwrap();
        let r = uniqueness_check(&p, 4, F2).unwrap();
        assert!(r.passed(), "{spec}: {:?}", r.violations);
    }
}
