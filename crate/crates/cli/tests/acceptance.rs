//! Acceptance suite: every batch criterion at its stated size, one test per
//! criterion. Run with `--nocapture` to see the report lines; the suite is
//! also reachable at runtime through `reeb verify-suite`.

use reeb_cli::suite;

const SEED: u64 = 0;

fn check(result: suite::CriterionResult) {
    println!("{}", result.report_line());
    assert!(result.pass, "{}", result.report_line());
}

#[test]
fn criterion_1_validator_oracle_equivalence() {
    check(suite::criterion_1());
}

#[test]
fn criterion_2_wedge_invariants() {
    check(suite::criterion_2(SEED));
}

#[test]
fn criterion_3_count_gluing() {
    check(suite::criterion_3(SEED));
}

#[test]
fn criterion_4_realization_roundtrip() {
    check(suite::criterion_4(SEED));
}

#[test]
fn criteria_5_and_6_connected_sum() {
    let (c5, c6) = suite::criteria_5_and_6(SEED);
    println!("{}", c5.report_line());
    println!("{}", c6.report_line());
    assert!(c5.pass, "{}", c5.report_line());
    assert!(c6.pass, "{}", c6.report_line());
}

#[test]
fn criterion_7_augmentation() {
    check(suite::criterion_7(SEED));
}

#[test]
fn criterion_8_fixtures_and_sampling_oracle() {
    check(suite::criterion_8());
}

#[test]
fn criterion_9_critical_split() {
    check(suite::criterion_9());
}
