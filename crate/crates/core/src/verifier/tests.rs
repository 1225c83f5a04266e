use std::collections::HashSet;

use super::*;
use crate::fixtures;

fn quick() -> VerifyConfig {
    VerifyConfig {
        trials: 25,
        ..VerifyConfig::default()
    }
}

#[test]
fn coverage_names_are_unique_and_match_outcomes() {
    let cov = coverage();
    let names: HashSet<_> = cov.iter().map(|c| c.identity).collect();
    assert_eq!(names.len(), cov.len());
    let alg = fixtures::dual_numbers();
    for suite in Suite::ALL {
        let res = run_suite(suite, &alg, None, quick());
        let listed: Vec<_> = cov.iter().filter(|c| c.suite == suite).map(|c| c.identity).collect();
        let ran: Vec<_> = res.identities.iter().map(|o| o.name.as_str()).collect();
        assert_eq!(listed, ran, "{suite}");
    }
}

#[test]
fn valid_fixtures_pass_every_suite() {
    for fx in fixtures::valid() {
        for res in run_suites(&Suite::ALL, &fx.algebra, fx.theta.as_ref(), quick()) {
            assert!(res.passed(), "{} {}: {:?}", fx.name, res.suite, res.first_failure());
        }
    }
}

#[test]
fn every_suite_fails_on_some_mutant() {
    let mutants = fixtures::mutants();
    for suite in Suite::ALL {
        let caught = mutants.iter().any(|fx| {
            let res = run_suite(suite, &fx.algebra, fx.theta.as_ref(), quick());
            let failed = res.status == Status::Fail;
            if failed {
                assert!(res.first_failure().unwrap().witness.is_some());
            }
            failed
        });
        assert!(caught, "{suite} accepts every mutant");
    }
}

#[test]
fn failing_witness_carries_inputs() {
    let fx = fixtures::get("broken_hom_assoc").unwrap();
    let res = run_suite(Suite::Chain, &fx.algebra, None, quick());
    let bad = res.identities.iter().find(|o| o.name == "b^2 = 0").unwrap();
    assert_eq!(bad.status, Status::Fail);
    let w = bad.witness.as_ref().unwrap();
    assert!(w.trial.is_some());
    assert_eq!(w.inputs[0].kind, "chain");
}

#[test]
fn non_regular_algebra_skips_calculus_with_reason() {
    let res = run_suite(Suite::Calculus, &fixtures::nilpotent_twist(), None, quick());
    assert_eq!(res.status, Status::Skipped);
    assert!(res.passed());
    for o in &res.identities {
        assert_eq!(o.reason.as_deref(), Some("RegularityError"));
    }
}

#[test]
fn fixtures_without_theta_skip_symmetric_checks() {
    let fx = fixtures::get("upper_triangular_twist").unwrap();
    let res = run_suite(Suite::Bv, &fx.algebra, None, quick());
    let o = res.identities.iter().find(|o| o.name == "Theta is a symmetric structure").unwrap();
    assert_eq!(o.status, Status::Skipped);
    assert_eq!(o.reason.as_deref(), Some("NoSymmetricStructure"));
}

#[test]
fn reports_are_deterministic() {
    let fx = fixtures::get("dual_numbers_twist_2").unwrap();
    let a = serde_json::to_string(&run_suites(&Suite::ALL, &fx.algebra, None, quick())).unwrap();
    let b = serde_json::to_string(&run_suites(&Suite::ALL, &fx.algebra, None, quick())).unwrap();
    assert_eq!(a, b);
}

#[test]
fn random_cochain_is_reproducible_and_equivariant() {
    let alg = fixtures::dual_numbers_twist(crate::Scalar::from(2i64));
    let f = random_cochain(&alg, 2, 7).unwrap();
    assert_eq!(f, random_cochain(&alg, 2, 7).unwrap());
    assert_ne!(f, random_cochain(&alg, 2, 8).unwrap());
    assert!(f.is_equivariant(&alg).unwrap());
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nope".parse::<Suite>().is_err());
}
