//! Representation suite: the truncated Hilbert-space representation of
//! the quantum 4-sphere, its relation residuals, the trace closed forms,
//! the index pairings, and the numeric oracle for the symbolic engine.

use ncsphere::qrep::{pairing_checks, run_suite};
use ncsphere::report::Report;

fn assert_all(rep: &Report) {
    for c in rep.failures() {
        eprintln!("FAIL {}: {}\n  {}", c.id, c.statement, c.detail);
    }
    assert!(rep.all_passed());
}

#[test]
fn representation_suite_passes() {
    let mut rep = Report::new();
    run_suite(0, &mut rep);
    assert_all(&rep);
    assert!(rep.checks.len() >= 14);
}

#[test]
fn pairing_at_slow_decay_parameters() {
    let mut rep = Report::new();
    pairing_checks(0.9, 400, 1e-8, &mut rep);
    assert_all(&rep);
}
