use berger_g2::report::{timed, CheckEntry, Config, ConfigError, Status, VerificationReport};
use berger_g2::suite::{run_suite, Suite};
use serde_json::json;

#[test]
fn config_validation() {
    assert!(Config::default().validate().is_ok());
    let bad = Config { tol: 0.0, ..Config::default() };
    assert_eq!(bad.validate(), Err(ConfigError::NonPositiveTolerance(0.0)));
    let mut small = Config::default();
    small.grids.defect_sweep = 1;
    assert!(matches!(small.validate(), Err(ConfigError::TooSmall(_, 2))));
}

#[test]
fn report_round_trips_through_json() {
    let mut r = VerificationReport::new(Config::default());
    r.extend(timed(|| vec![CheckEntry::new("a", "anchor", true, 0.0, json!({})), CheckEntry::measured("b", "anchor", 0.5, json!({ "x": 1 }))]));
    r.entries.push(CheckEntry::new("c", "anchor", false, 1.0, json!(null)));
    assert!(r.ids_unique());
    assert!(!r.all_passed());
    assert_eq!(r.failures().len(), 1);
    assert_eq!(r.entry("b").unwrap().status, Status::Measured);
    r.strip_timings();
    let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn full_suite_ids_are_unique_and_exact_checks_vanish() {
    let r = run_suite(Suite::All, &Config::default());
    assert!(r.ids_unique());
    assert!(r.all_passed());
    for e in &r.entries {
        let algebraic = ["structure.", "flag.jstruct", "flag.omegazeta.", "flag.structflag", "flag.nk.u2", "cohom1.pullback.exact", "cohom1.omega4"];
        if algebraic.iter().any(|p| e.check_id.starts_with(p)) && !e.check_id.contains("negative control") {
            assert_eq!(e.residual, 0.0, "{}", e.check_id);
        }
    }
}

#[test]
fn suite_parsing() {
    assert_eq!(Suite::parse("cohom1"), Some(Suite::Cohom1));
    assert_eq!(Suite::parse("bogus"), None);
}
