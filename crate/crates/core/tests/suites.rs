use desitter_core::suites::{run_suite, run_suites, Suite, SuiteConfig};
use desitter_core::Status;

/// Checks that fail by construction: the stated identity does not hold for
/// the objects as defined.
const KNOWN_FAILURES: &[&str] = &[
    "hodge-dot-symmetry",
    "killing-det-reduced-form",
    "killing-det-zero-loci",
    "komar-volume-killing",
    "pushforward-boosts",
];

fn quick() -> SuiteConfig {
    SuiteConfig { samples: 40, points: 12, ..Default::default() }
}

#[test]
fn reports_repeat_byte_for_byte() {
    let cfg = quick();
    let a = run_suites(&[Suite::Clifford, Suite::Algebra, Suite::Desitter], &cfg);
    let b = run_suites(&[Suite::Desitter, Suite::Clifford, Suite::Algebra], &cfg);
    let ja = serde_json::to_string(&a).unwrap();
    assert_eq!(ja, serde_json::to_string(&b).unwrap());
    assert!(a.iter().all(|(_, r)| r.runtime_ms == 0.0));
}

#[test]
fn only_the_known_checks_fail() {
    let cfg = quick();
    for suite in [Suite::Clifford, Suite::Geometry, Suite::Desitter, Suite::Algebra, Suite::Dynamics] {
        for r in run_suite(suite, &cfg) {
            let known = KNOWN_FAILURES.contains(&r.name.as_str()) || r.name.starts_with("commutator-");
            if r.status == Status::Fail {
                assert!(known, "{suite}/{} failed: residual {:e}, tol {:e}", r.name, r.residual, r.tolerance);
            }
        }
    }
}

#[test]
fn commutator_failures_are_sign_flips() {
    let reps = run_suite(Suite::Algebra, &quick());
    let table: Vec<_> = reps.iter().filter(|r| r.name.starts_with("commutator-")).collect();
    assert_eq!(table.len(), 45);
    let failing = table.iter().filter(|r| r.status == Status::Fail).count();
    assert_eq!(failing, 12);
}

#[test]
fn invalid_configuration_is_rejected() {
    assert!(SuiteConfig { ell: 0.0, ..Default::default() }.validate().is_err());
    assert!(SuiteConfig { h: -1.0, ..Default::default() }.validate().is_err());
    assert!(SuiteConfig { samples: 0, ..Default::default() }.validate().is_err());
}
