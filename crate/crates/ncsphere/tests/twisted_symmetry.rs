//! Twisted symmetry of the toric spheres: Lie brackets in three
//! realizations, Dirac-matrix commutator identities, invariance of the
//! instanton gauge potential, relation preservation, Hopf sanity checks,
//! embedding compatibility, and the conformal variations of the instanton
//! together with their self-duality.

use ncsphere::hodge::build_hodge;
use ncsphere::report::Report;
use ncsphere::theta::{build_instanton, build_theta_spheres, ThetaConfig};
use ncsphere::twisted::{build_twisted, TwistedAlgebra};
use std::sync::OnceLock;

fn alg() -> &'static TwistedAlgebra {
    static A: OnceLock<TwistedAlgebra> = OnceLock::new();
    A.get_or_init(|| build_twisted(&build_theta_spheres(&ThetaConfig::from_ratio(1, 3))))
}

fn alg_classical() -> &'static TwistedAlgebra {
    static A: OnceLock<TwistedAlgebra> = OnceLock::new();
    A.get_or_init(|| build_twisted(&build_theta_spheres(&ThetaConfig::from_ratio(0, 1))))
}

fn assert_all(rep: &Report) {
    for c in rep.failures() {
        eprintln!("FAIL {}: {}\n  {}", c.id, c.statement, c.detail);
    }
    assert!(rep.all_passed());
}

#[test]
fn brackets_deformed() {
    let mut rep = Report::new();
    alg().bracket_check(&mut rep);
    assert_all(&rep);
}

#[test]
fn brackets_classical() {
    let mut rep = Report::new();
    alg_classical().bracket_check(&mut rep);
    assert_all(&rep);
}

#[test]
fn dirac_brackets_and_hopf() {
    let a = alg();
    let mut rep = Report::new();
    a.dirac_bracket_check(&mut rep);
    a.hopf_check(&mut rep);
    assert_all(&rep);
}

#[test]
fn relations_preserved() {
    let mut rep = Report::new();
    alg().relation_preservation_check(&mut rep);
    assert_all(&rep);
}

#[test]
fn embedding_compatibility() {
    let mut rep = Report::new();
    alg().compatibility_check(&mut rep);
    assert_all(&rep);
}

#[test]
fn gauge_potential_invariance() {
    let a = alg();
    let mut rep = Report::new();
    let data = build_instanton(&a.ts, &mut rep);
    a.omega_invariance_check(&data, &mut rep);
    assert_all(&rep);
}

#[test]
fn conformal_variations_self_dual() {
    let a = alg();
    let mut rep = Report::new();
    let data = build_instanton(&a.ts, &mut rep);
    let hodge = build_hodge(&a.ts, &mut rep);
    let vars = a.conformal_variations(&data, &mut rep);
    a.variation_self_duality(&vars, &hodge, &mut rep);
    assert_all(&rep);
}

#[test]
fn conformal_variations_classical() {
    let a = alg_classical();
    let mut rep = Report::new();
    let data = build_instanton(&a.ts, &mut rep);
    let hodge = build_hodge(&a.ts, &mut rep);
    let vars = a.conformal_variations(&data, &mut rep);
    a.variation_self_duality(&vars, &hodge, &mut rep);
    assert_all(&rep);
}
