//! Symplectic quantum spheres: the rewrite rules derived from the R-matrix
//! are compared rule-for-rule against the independently written-out
//! relation list, then the full verification suite runs — R-matrix
//! structure, instanton projection, 4-sphere relations, q -> q^-1
//! symmetry, Hopf quotient, and the structure-group coaction.

use ncsphere::qsympl::{
    build_coaction, build_hopf_quotient, build_projection_q, build_qsphere, coaction_checks,
    hopf_quotient_checks, q_inverse_checks, r_structure_checks, rtt_random_checks, run_suite,
    verify_s4q_relations, QSphere,
};
use ncsphere::report::Report;
use std::sync::OnceLock;

#[path = "common/expected_rules.rs"]
mod expected_rules;

fn qs() -> &'static QSphere {
    static Q: OnceLock<QSphere> = OnceLock::new();
    Q.get_or_init(|| build_qsphere().expect("sphere relations derive cleanly"))
}

fn assert_all(rep: &Report) {
    for c in rep.failures() {
        eprintln!("FAIL {}: {}\n  {}", c.id, c.statement, c.detail);
    }
    assert!(rep.all_passed());
}

#[test]
fn derived_rules_match_the_written_out_relations() {
    let bad = expected_rules::compare_rules(&qs().sys);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn sphere_ideal_rule_is_the_unit_sphere_relation() {
    let sys = &qs().sys;
    // The first ideal rule is the sphere relation itself; the rest are its
    // overlap-completion consequences.
    let rule = &sys.ideal_rules[0];
    assert_eq!(sys.word_string(&rule.lhs), "xb4 x4");
    let want = sys.parse_poly("(1) - xb1 x1 - xb2 x2 - xb3 x3").unwrap();
    assert!(rule.rhs.sub(&want).is_zero());
}

#[test]
fn r_matrix_structure() {
    let mut rep = Report::new();
    r_structure_checks(&qs().r, &mut rep);
    assert_all(&rep);
}

#[test]
fn rewrite_system_is_confluent() {
    let sys = &qs().sys;
    assert!(sys.check_overlaps().ambiguities.is_empty());
    assert!(sys.without_ideal().check_overlaps().ambiguities.is_empty());
}

#[test]
fn projection_and_four_sphere() {
    let mut rep = Report::new();
    let inst = build_projection_q(qs(), &mut rep);
    verify_s4q_relations(qs(), &inst, &mut rep);
    assert_all(&rep);
}

#[test]
fn q_inverse_symmetry() {
    let mut rep = Report::new();
    let inst = build_projection_q(qs(), &mut rep);
    q_inverse_checks(qs(), &inst, &mut rep);
    assert_all(&rep);
}

#[test]
fn hopf_quotient() {
    let mut rep = Report::new();
    let hq = build_hopf_quotient();
    hopf_quotient_checks(&qs().r, &hq, &mut rep);
    rtt_random_checks(&qs().r, &hq, 0, 50, &mut rep);
    assert_all(&rep);
}

#[test]
fn structure_group_coaction() {
    let mut rep = Report::new();
    let inst = build_projection_q(qs(), &mut rep);
    let hq = build_hopf_quotient();
    let co = build_coaction(qs());
    coaction_checks(qs(), &inst, &co, &hq, &mut rep);
    assert_all(&rep);
}

#[test]
fn full_suite_passes() {
    let mut rep = Report::new();
    run_suite(0, &mut rep).expect("suite builds");
    assert_all(&rep);
    assert!(rep.checks.len() >= 25);
}
