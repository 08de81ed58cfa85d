//! Cyclic-complex suite: operator identities on random chains over both
//! sphere families, degree-zero Chern characters in closed form, and the
//! convention detection for the (ch0, ch1) closure.

use ncsphere::cyclic::run_suite;
use ncsphere::report::Report;

#[test]
fn cyclic_suite_passes() {
    let mut rep = Report::new();
    run_suite(0, &mut rep);
    for c in rep.failures() {
        eprintln!("FAIL {}: {}\n  {}", c.id, c.statement, c.detail);
    }
    assert!(rep.all_passed());
    // Two identity batches, their displayed-B counterexamples, four ch0
    // checks, two closure checks, the ch2 build.
    assert!(rep.checks.len() >= 10);
    // The closure detail records which conventions close.
    let closure = rep
        .checks
        .iter()
        .find(|c| c.id == "cyclic.closure.q")
        .unwrap();
    assert!(closure.detail.contains("closing conventions"));
}
