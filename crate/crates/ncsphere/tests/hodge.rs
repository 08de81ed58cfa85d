//! Hodge star on the 4-sphere: tangential idempotency, the classical numeric
//! oracle, equivariance, and self-duality of the instanton curvature.

use ncsphere::hodge::{build_hodge, self_duality_check};
use ncsphere::report::Report;
use ncsphere::theta::{build_instanton, build_theta_spheres, ThetaConfig, ThetaSpheres};
use std::sync::OnceLock;

fn spheres() -> &'static ThetaSpheres {
    static TS: OnceLock<ThetaSpheres> = OnceLock::new();
    TS.get_or_init(|| build_theta_spheres(&ThetaConfig::from_ratio(1, 3)))
}

fn assert_all(rep: &Report) {
    for c in rep.failures() {
        eprintln!("FAIL {}: {}\n  {}", c.id, c.statement, c.detail);
    }
    assert!(rep.all_passed());
}

#[test]
fn table_identities_deformed() {
    let mut rep = Report::new();
    let _ = build_hodge(spheres(), &mut rep);
    assert_all(&rep);
}

#[test]
fn table_identities_classical_with_oracle() {
    let ts = build_theta_spheres(&ThetaConfig::from_ratio(0, 1));
    let mut rep = Report::new();
    let _ = build_hodge(&ts, &mut rep);
    assert!(rep.checks.iter().any(|c| c.id == "hodge.numeric_oracle"));
    assert_all(&rep);
}

#[test]
fn curvature_self_dual() {
    let ts = spheres();
    let mut rep = Report::new();
    let data = build_instanton(ts, &mut rep);
    let h = build_hodge(ts, &mut rep);
    self_duality_check(ts, &data, &h, &mut rep);
    assert_all(&rep);
}

#[test]
fn curvature_self_dual_classical() {
    let ts = build_theta_spheres(&ThetaConfig::from_ratio(0, 1));
    let mut rep = Report::new();
    let data = build_instanton(&ts, &mut rep);
    let h = build_hodge(&ts, &mut rep);
    self_duality_check(&ts, &data, &h, &mut rep);
    assert_all(&rep);
}
