//! End-to-end checks for the toric spheres: rewriting confluence, the
//! subalgebra embedding, twisted Clifford relations and the instanton data.

use ncsphere::report::Report;
use ncsphere::theta::{
    build_instanton, build_theta_spheres, su2_action_check, ThetaConfig, ThetaSpheres,
};
use num_complex::Complex64;
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
fn systems_confluent() {
    let mut rep = Report::new();
    spheres().verify_systems(&mut rep);
    assert_all(&rep);
}

#[test]
fn subalgebra_embedding() {
    let mut rep = Report::new();
    spheres().verify_subalgebra(&mut rep);
    assert_all(&rep);
}

#[test]
fn clifford_relations() {
    let mut rep = Report::new();
    spheres().verify_clifford(&mut rep);
    assert_all(&rep);
}

#[test]
fn instanton_identities() {
    let ts = spheres();
    let mut rep = Report::new();
    let data = build_instanton(ts, &mut rep);
    assert_all(&rep);
    assert!(data.p.bianchi_check().unwrap());
    assert_eq!(data.f0.form_degree(), Some(2));
    assert_eq!(data.omega.form_degree(), Some(1));
}

#[test]
fn gauge_action_numeric() {
    let ts = spheres();
    let mut rep = Report::new();
    let data = build_instanton(ts, &mut rep);
    // a generic special unitary: w = [[a, -conj(b)], [b, conj(a)]]
    let a = Complex64::from_polar(0.6, 0.7);
    let b = Complex64::from_polar(0.8, -1.1);
    let w = [[a, -b.conj()], [b, a.conj()]];
    su2_action_check(ts, &data, w, &mut rep);
    assert_all(&rep);
}

#[test]
fn classical_limit() {
    let ts = build_theta_spheres(&ThetaConfig::from_ratio(0, 1));
    let mut rep = Report::new();
    ts.verify_subalgebra(&mut rep);
    ts.verify_clifford(&mut rep);
    let _ = build_instanton(&ts, &mut rep);
    assert_all(&rep);
}
