//! Acceptance run: one test per acceptance criterion, so the harness
//! prints one pass/fail line for each.  Every criterion is verified
//! through the same public API the command-line harness uses.

use ncsphere::cyclic;
use ncsphere::hodge::{build_hodge, self_duality_check};
use ncsphere::qrep;
use ncsphere::qsympl::{self, QInstanton, QSphere};
use ncsphere::report::Report;
use ncsphere::theta::{build_instanton, build_theta_spheres, ThetaConfig, ThetaSpheres};
use ncsphere::twisted::{build_twisted, TwistedAlgebra};
use std::sync::OnceLock;

#[path = "common/expected_rules.rs"]
mod expected_rules;

fn ts() -> &'static ThetaSpheres {
    static S: OnceLock<ThetaSpheres> = OnceLock::new();
    S.get_or_init(|| build_theta_spheres(&ThetaConfig::from_ratio(1, 3)))
}

fn ts0() -> &'static ThetaSpheres {
    static S: OnceLock<ThetaSpheres> = OnceLock::new();
    S.get_or_init(|| build_theta_spheres(&ThetaConfig::from_ratio(0, 1)))
}

fn alg() -> &'static TwistedAlgebra {
    static A: OnceLock<TwistedAlgebra> = OnceLock::new();
    A.get_or_init(|| build_twisted(ts()))
}

fn qsphere() -> &'static (QSphere, QInstanton) {
    static Q: OnceLock<(QSphere, QInstanton)> = OnceLock::new();
    Q.get_or_init(|| {
        let qs = qsympl::build_qsphere().expect("q-sphere builds");
        let mut scratch = Report::new();
        let inst = qsympl::build_projection_q(&qs, &mut scratch);
        (qs, inst)
    })
}

fn assert_all(rep: &Report) {
    for c in rep.failures() {
        eprintln!("FAIL {}: {}\n  {}", c.id, c.statement, c.detail);
    }
    assert!(rep.all_passed());
}

fn assert_ids(rep: &Report, prefixes: &[&str]) {
    for pre in prefixes {
        let hits: Vec<_> = rep.checks.iter().filter(|c| c.id.starts_with(pre)).collect();
        assert!(!hits.is_empty(), "no checks recorded under {}", pre);
        for c in hits {
            assert!(c.passed, "FAIL {}: {}", c.id, c.detail);
        }
    }
}

/// Criterion 1: the instanton projections are exact self-adjoint
/// idempotents, on the toric side for several angles and on the q-side.
#[test]
fn criterion_01_projection_identities() {
    for (n, d) in [(0i64, 1i64), (1, 3), (1, 4)] {
        let s = build_theta_spheres(&ThetaConfig::from_ratio(n, d));
        let mut rep = Report::new();
        let _ = build_instanton(&s, &mut rep);
        assert_ids(&rep, &["theta.instanton.projection"]);
    }
    let (_, inst) = qsphere();
    inst.p.check_projection().expect("q-side projection");
}

/// Criterion 2: the frames are orthonormal, exactly.
#[test]
fn criterion_02_frame_orthonormality() {
    let mut rep = Report::new();
    let _ = build_instanton(ts(), &mut rep);
    assert_ids(&rep, &["theta.instanton.psi_unitary"]);
    let mut rep = Report::new();
    let qs = &qsphere().0;
    let _ = qsympl::build_projection_q(qs, &mut rep);
    assert_ids(&rep, &["qsympl.frame.orthonormal"]);
}

/// Criterion 3: the twisted Clifford relation families and the grading
/// element product identity.
#[test]
fn criterion_03_twisted_clifford() {
    let mut rep = Report::new();
    ts().verify_clifford(&mut rep);
    assert_all(&rep);
    assert_ids(&rep, &["theta.clifford.grading"]);
}

/// Criterion 4: the embedded 4-sphere subalgebra identities, centrality,
/// the sphere relation, and the spinor bilinear display.
#[test]
fn criterion_04_subalgebra() {
    let mut rep = Report::new();
    ts().verify_subalgebra(&mut rep);
    assert_all(&rep);
}

/// Criterion 5: the orthogonal symmetry suite: the matrix invariance
/// identity for all ten generators, invariance of the gauge potential,
/// and the full bracket tables.
#[test]
fn criterion_05_symmetry() {
    let a = alg();
    let mut rep = Report::new();
    a.bracket_check(&mut rep);
    a.dirac_bracket_check(&mut rep);
    let mut scratch = Report::new();
    let data = build_instanton(&a.ts, &mut scratch);
    a.omega_invariance_check(&data, &mut rep);
    a.relation_preservation_check(&mut rep);
    assert_all(&rep);
    assert_ids(&rep, &["twisted.bracket.", "twisted.omega.matrix.", "twisted.omega.derivation."]);
}

/// Criterion 6: the conformal variations: closed forms of the varied
/// potentials, projection compatibility, the anticommutator identity, and
/// the varied curvature formulas.
#[test]
fn criterion_06_conformal_variations() {
    let a = alg();
    let mut rep = Report::new();
    let data = build_instanton(&a.ts, &mut rep);
    let h = build_hodge(&a.ts, &mut rep);
    let vars = a.conformal_variations(&data, &mut rep);
    a.variation_self_duality(&vars, &h, &mut rep);
    assert_all(&rep);
    assert_ids(
        &rep,
        &[
            "twisted.variation.omega.",
            "twisted.variation.alpha_projection.",
            "twisted.variation.anticommutator.",
            "twisted.variation.curvature.",
        ],
    );
}

/// Criterion 7: the Hodge star is an involution on tangential two-forms,
/// fixes the instanton curvature and its variations, and agrees with the
/// classical numeric oracle at angle zero.
#[test]
fn criterion_07_hodge() {
    let a = alg();
    let mut rep = Report::new();
    let data = build_instanton(&a.ts, &mut rep);
    let h = build_hodge(&a.ts, &mut rep);
    self_duality_check(&a.ts, &data, &h, &mut rep);
    let vars = a.conformal_variations(&data, &mut Report::new());
    a.variation_self_duality(&vars, &h, &mut rep);
    assert_all(&rep);
    assert_ids(&rep, &["hodge.involution_on_tangential", "hodge.self_duality", "twisted.variation.self_dual."]);

    let mut rep0 = Report::new();
    let _ = build_hodge(ts0(), &mut rep0);
    assert_ids(&rep0, &["hodge.numeric_oracle"]);
}

/// Criterion 8: the rewrite rules derived from the R-matrix tensor
/// equations match the written-out relation list rule for rule, and the
/// repeated-index diagonal entry of R is the deformation parameter.
#[test]
fn criterion_08_q_derivation() {
    let (qs, _) = qsphere();
    let bad = expected_rules::compare_rules(&qs.sys);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
    let mut rep = Report::new();
    qsympl::r_structure_checks(&qs.r, &mut rep);
    assert_all(&rep);
    assert_ids(&rep, &["qsympl.r.diag"]);
}

/// Criterion 9: the structure-group coaction preserves every 7-sphere
/// relation, the projection entries are coinvariant, the counit axiom
/// holds, and the Hopf ideal and quotient-algebra relations check out.
#[test]
fn criterion_09_coaction() {
    let (qs, inst) = qsphere();
    let mut rep = Report::new();
    let hq = qsympl::build_hopf_quotient();
    qsympl::hopf_quotient_checks(&qs.r, &hq, &mut rep);
    let co = qsympl::build_coaction(qs);
    qsympl::coaction_checks(qs, inst, &co, &hq, &mut rep);
    assert_all(&rep);
    assert_ids(&rep, &["qsympl.coaction.", "qsympl.hopf."]);
}

/// Criterion 10: the cyclic complex identities on random chains, the
/// closed forms of the degree-zero Chern characters, and a consistent
/// closure convention for the low-degree Chern cycle.
#[test]
fn criterion_10_cyclic() {
    let mut rep = Report::new();
    cyclic::run_suite(0, &mut rep);
    assert_all(&rep);
    assert_ids(&rep, &["cyclic.identities.", "cyclic.ch0.", "cyclic.closure."]);
}

/// Criterion 11: the index pairing is the integer charge -1 at both
/// parameter settings, the rank pairing is exactly 2, and the truncated
/// traces match the geometric closed form.
#[test]
fn criterion_11_index_pairing() {
    let t0 = std::time::Instant::now();
    let sr = qrep::build_sigma(0.5, 40).unwrap();
    let p = qrep::index_pairing(&sr).unwrap();
    assert!((p + 1.0).abs() < 1e-10, "pairing {}", p);
    assert!(
        t0.elapsed().as_secs_f64() < 2.0,
        "default pairing took {:?}",
        t0.elapsed()
    );
    let sr9 = qrep::build_sigma(0.9, 400).unwrap();
    let p9 = qrep::index_pairing(&sr9).unwrap();
    assert!((p9 + 1.0).abs() < 1e-8, "pairing {}", p9);

    let rank = qrep::tau0(&qrep::chern0_terms());
    assert!(rank.sub(&ncsphere::scalars::Scalar::from_int(2)).is_zero());

    for n in [1usize, 20, 40] {
        let s = qrep::SigmaRep { q: 0.5, cutoff: n };
        let d = (s.trace_t() - s.trace_t_closed()).abs();
        assert!(d < 1e-13, "trace mismatch {} at cutoff {}", d, n);
    }
}

/// Criterion 12: every shipped rewrite system is confluent, and the
/// numeric representation agrees with symbolic equality on random
/// element pairs.
#[test]
fn criterion_12_rewriting_soundness() {
    let mut rep = Report::new();
    ts().verify_systems(&mut rep);
    assert_all(&rep);

    let (qs, inst) = qsphere();
    assert!(qs.sys.check_overlaps().ambiguities.is_empty());
    assert!(qs.sys.without_ideal().check_overlaps().ambiguities.is_empty());
    let hq = qsympl::build_hopf_quotient();
    assert!(hq.bq.check_overlaps().ambiguities.is_empty());
    let co = qsympl::build_coaction(qs);
    assert!(co.su.check_overlaps().ambiguities.is_empty());

    let mut rep = Report::new();
    qrep::numeric_symbolic_oracle(qs, inst, 100, 0, &mut rep);
    assert_all(&rep);
}

/// Criterion 13: the commutative reduction: the whole toric suite passes
/// identically at angle zero.
#[test]
fn criterion_13_classical_limit() {
    let s = ts0();
    let mut rep = Report::new();
    s.verify_systems(&mut rep);
    s.verify_subalgebra(&mut rep);
    s.verify_clifford(&mut rep);
    let data = build_instanton(s, &mut rep);
    let h = build_hodge(s, &mut rep);
    self_duality_check(s, &data, &h, &mut rep);
    assert_all(&rep);
}
