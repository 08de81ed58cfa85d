//! The hand-written quasi-commutation relation list of the quantum
//! 7-sphere, in rule form "bigger word = smaller combination", shared by
//! the module tests and the acceptance run.  The `x` rows and the
//! diagonal mixed rows are transcribed directly; the conjugate rows
//! follow by applying the star to the transcribed ones.

pub const EXPECTED_RULES: &[(&str, &str)] = &[
    // x-x exchange
    ("x2 x1", "(q^-1) x1 x2"),
    ("x3 x1", "(q^-1) x1 x3"),
    ("x4 x2", "(q^-1) x2 x4"),
    ("x4 x3", "(q^-1) x3 x4"),
    ("x4 x1", "(q^-2) x1 x4"),
    ("x3 x2", "(q^-2) x2 x3 + (q^-3 - q^-1) x1 x4"),
    // conjugate-conjugate exchange
    ("xb2 xb1", "(q) xb1 xb2"),
    ("xb3 xb1", "(q) xb1 xb3"),
    ("xb4 xb2", "(q) xb2 xb4"),
    ("xb4 xb3", "(q) xb3 xb4"),
    ("xb4 xb1", "(q^2) xb1 xb4"),
    ("xb3 xb2", "(q^2) xb2 xb3 + (q^3 - q) xb1 xb4"),
    // mixed exchange, conjugate letter below the plain one
    ("x1 xb1", "xb1 x1"),
    ("x2 xb1", "(q^-1) xb1 x2"),
    ("x2 xb2", "xb2 x2 + (1 - q^-2) xb1 x1"),
    ("x3 xb1", "(q^-1) xb1 x3"),
    ("x3 xb2", "(q^-2) xb2 x3"),
    (
        "x3 xb3",
        "xb3 x3 + (1 - q^-2) xb1 x1 + (1 - q^-4) xb2 x2",
    ),
    ("x4 xb1", "(q^-2) xb1 x4"),
    ("x4 xb2", "(q^-1) xb2 x4 + (q^-3 - q^-1) xb1 x3"),
    ("x4 xb3", "(q^-1) xb3 x4 + (q^-3 - q^-5) xb1 x2"),
    (
        "x4 xb4",
        "xb4 x4 + (1 + q^-4 - q^-2 - q^-6) xb1 x1 + (1 - q^-2) xb2 x2 + (1 - q^-2) xb3 x3",
    ),
    // mixed exchange, conjugate letter above the plain one
    ("xb2 x1", "(q) x1 xb2"),
    ("xb3 x1", "(q) x1 xb3"),
    ("xb4 x1", "(q^2) x1 xb4"),
    ("xb3 x2", "(q^2) x2 xb3"),
    ("xb4 x2", "(q) x2 xb4 + (1 - q^-2) xb3 x1"),
    ("xb4 x3", "(q) x3 xb4 + (q^-4 - q^-2) xb2 x1"),
];

/// Every derived rule matches the written-out list, rule for rule,
/// comparing right-hand sides modulo the quasi-commutation rules alone.
/// Returns a list of discrepancies (empty on success).
pub fn compare_rules(sys: &ncsphere::ncalg::RewriteSystem) -> Vec<String> {
    let mut bad = Vec::new();
    if sys.rules.len() != EXPECTED_RULES.len() {
        bad.push(format!(
            "derived {} rules, expected {}",
            sys.rules.len(),
            EXPECTED_RULES.len()
        ));
    }
    let free = sys.without_ideal();
    for (lhs, rhs) in EXPECTED_RULES {
        let lw = match sys.parse_poly(lhs) {
            Ok(p) => p,
            Err(e) => {
                bad.push(format!("cannot parse {}: {}", lhs, e));
                continue;
            }
        };
        let (lword, _) = lw.leading().unwrap();
        let rule = match sys.rules.iter().find(|r| &r.lhs == lword) {
            Some(r) => r,
            None => {
                bad.push(format!("no derived rule for {}", lhs));
                continue;
            }
        };
        let want = sys.parse_poly(rhs).unwrap();
        if !free.nf(&rule.rhs.sub(&want)).is_zero() {
            bad.push(format!(
                "rule {} derived as {} but expected {}",
                lhs,
                sys.poly_string(&rule.rhs),
                rhs
            ));
        }
    }
    bad
}
