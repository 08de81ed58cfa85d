//! Symplectic quantum spheres built from the C-series R-matrix.
//!
//! The R-matrix for the rank-two symplectic quantum group determines, through
//! the RTT tensor equations, a quantum 7-sphere generated by four letters
//! `x1..x4` and their conjugates `xb1..xb4` with `sum xb_i x_i = 1`.  The
//! module derives its quasi-commutation rewrite rules from the tensor
//! equations alone, builds the instanton projection `p = Psi Psi*`, checks
//! that the entries of `p` generate a quantum 4-sphere with its closed
//! relation list, realizes the Hopf quotient of the symplectic quantum group
//! onto the structure quantum group, and verifies the structure-group
//! coaction on the 7-sphere together with the coinvariance of the 4-sphere.
//!
//! The unit `q` of the scalar ring is treated as a real deformation
//! parameter (`UnitMode::RealUnit`): conjugation fixes `q`.

use crate::ncalg::{AlgError, Generator, NCPoly, RewriteSystem, Word};
use crate::ncmatrix::NCMatrix;
use crate::report::Report;
use crate::scalars::{Scalar, UnitMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QError {
    /// The tensor equations did not reduce to the expected rewrite rules.
    #[error("relation derivation mismatch: {0}")]
    DerivationMismatch(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Vector-space dimension of the defining representation.
pub const NDIM: usize = 4;
/// Half-sums of positive roots pairing: exponents rho_i (1-based order).
const RHO: [i64; 4] = [2, 1, -1, -2];
/// Signs eps_i distinguishing the two halves of the symplectic basis.
const EPS: [i64; 4] = [1, 1, -1, -1];

/// The symplectic conjugate index i' = N + 1 - i (0-based).
pub fn conj_index(i: usize) -> usize {
    NDIM - 1 - i
}

fn up(k: i64) -> Scalar {
    Scalar::unit_pow(k)
}

/// q - q^-1, the standard quantum deformation difference.
fn qdiff() -> Scalar {
    up(1).sub(&up(-1))
}

/// The C-series R-matrix on C^4 (x) C^4 with components R_{ij}^{kp}, plus
/// the symplectic metric C_i^j used for conjugation and the antipode.
#[derive(Debug, Clone)]
pub struct RMatrix {
    entries: Vec<Scalar>,
}

impl RMatrix {
    fn idx(i: usize, j: usize, k: usize, p: usize) -> usize {
        ((i * NDIM + j) * NDIM + k) * NDIM + p
    }

    /// Component R_{ij}^{kp} (all indices 0-based).
    pub fn r(&self, i: usize, j: usize, k: usize, p: usize) -> &Scalar {
        &self.entries[Self::idx(i, j, k, p)]
    }

    fn add(&mut self, i: usize, j: usize, k: usize, p: usize, c: Scalar) {
        let e = &mut self.entries[Self::idx(i, j, k, p)];
        *e = e.add(&c);
    }

    /// Symplectic metric entry C_i^j = q^{rho_j} eps_i delta_{i,j'}.
    pub fn c_entry(&self, i: usize, j: usize) -> Scalar {
        if j == conj_index(i) {
            up(RHO[j]).scale(&crate::scalars::FieldElem::from_int(EPS[i]))
        } else {
            Scalar::zero()
        }
    }

    /// Inverse metric entry, (C^-1)_i^j.
    pub fn c_inv_entry(&self, i: usize, j: usize) -> Scalar {
        if j == conj_index(i) {
            self.c_entry(j, i)
                .monomial_inv()
                .expect("antidiagonal metric entry is a monomial")
        } else {
            Scalar::zero()
        }
    }

    /// All triples (i,j,k,p) with a nonzero component.
    pub fn support(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..NDIM {
            for j in 0..NDIM {
                for k in 0..NDIM {
                    for p in 0..NDIM {
                        if !self.r(i, j, k, p).is_zero() {
                            out.push((i, j, k, p));
                        }
                    }
                }
            }
        }
        out
    }

    /// The same R-matrix with the unit inverted, q -> q^-1.
    pub fn invert_unit(&self) -> RMatrix {
        RMatrix {
            entries: self.entries.iter().map(invert_unit_scalar).collect(),
        }
    }
}

/// Map q -> q^-1 on a scalar (negate every unit exponent).
pub fn invert_unit_scalar(s: &Scalar) -> Scalar {
    let mut out = Scalar::zero();
    for (k, c) in &s.terms {
        out = out.add(&Scalar::monomial(c.clone(), -k));
    }
    out
}

fn invert_unit_poly(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in &p.terms {
        out.add_term(w.clone(), invert_unit_scalar(c));
    }
    out
}

/// Build the rank-two symplectic R-matrix from its five structural sums:
/// a q on the doubly-repeated diagonal, 1 on the generic diagonal, q^-1 on
/// the conjugate-pair diagonal, the lower-triangular exchange term, and the
/// conjugate-pair correction weighted by q^{rho_i - rho_j} eps_i eps_j.
pub fn build_r() -> RMatrix {
    let mut r = RMatrix {
        entries: vec![Scalar::zero(); NDIM * NDIM * NDIM * NDIM],
    };
    for i in 0..NDIM {
        r.add(i, i, i, i, up(1));
    }
    for i in 0..NDIM {
        for j in 0..NDIM {
            if i != j && i != conj_index(j) {
                r.add(i, j, i, j, Scalar::one());
            }
        }
    }
    for i in 0..NDIM {
        r.add(conj_index(i), i, conj_index(i), i, up(-1));
    }
    for i in 0..NDIM {
        for j in 0..NDIM {
            if i > j {
                r.add(i, j, j, i, qdiff());
                let w = up(RHO[i] - RHO[j])
                    .scale(&crate::scalars::FieldElem::from_int(EPS[i] * EPS[j]));
                let c = qdiff().mul(&w).neg();
                r.add(i, conj_index(i), j, conj_index(j), c);
            }
        }
    }
    r
}

/// Sparse matrix on C^4 (x) C^4 (x) C^4, keyed (row, col) over 0..64.
type Sparse3 = HashMap<(usize, usize), Scalar>;

fn sparse_mul(a: &Sparse3, b: &Sparse3) -> Sparse3 {
    let mut by_row: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
    for (&(r, c), v) in b {
        by_row.entry(r).or_default().push((c, v));
    }
    let mut out: Sparse3 = HashMap::new();
    for (&(ra, ca), va) in a {
        if let Some(row) = by_row.get(&ca) {
            for &(cb, vb) in row {
                let e = out.entry((ra, cb)).or_insert_with(Scalar::zero);
                *e = e.add(&va.mul(vb));
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Embed R into the (a,b) tensor slots of the triple product, identity on
/// the remaining slot; slots are named by their positions 0,1,2.
fn embed(r: &RMatrix, a: usize, b: usize) -> Sparse3 {
    let mut out: Sparse3 = HashMap::new();
    for (i, j, k, p) in r.support() {
        for m in 0..NDIM {
            let mut row = [0usize; 3];
            let mut col = [0usize; 3];
            let c = 3 - a - b;
            row[a] = k;
            row[b] = p;
            row[c] = m;
            col[a] = i;
            col[b] = j;
            col[c] = m;
            let rk = (row[0] * NDIM + row[1]) * NDIM + row[2];
            let ck = (col[0] * NDIM + col[1]) * NDIM + col[2];
            let e = out.entry((rk, ck)).or_insert_with(Scalar::zero);
            *e = e.add(r.r(i, j, k, p));
        }
    }
    out
}

/// Structural checks on the R-matrix: the diagonal spot values, a
/// lower-triangular correction entry, and the full Yang-Baxter equation.
pub fn r_structure_checks(r: &RMatrix, rep: &mut Report) {
    rep.exact("qsympl.r.diag", "R_{ii}^{ii} = q for every i", || {
        let mut bad = String::new();
        for i in 0..NDIM {
            if !r.r(i, i, i, i).sub(&up(1)).is_zero() {
                bad.push_str(&format!("i={} ", i));
            }
        }
        bad
    });
    rep.exact(
        "qsympl.r.generic",
        "R_{ij}^{ij} = 1 for i != j, i != j'",
        || {
            let mut bad = String::new();
            for i in 0..NDIM {
                for j in 0..NDIM {
                    if i != j && i != conj_index(j) && !r.r(i, j, i, j).sub(&Scalar::one()).is_zero()
                    {
                        bad.push_str(&format!("({},{}) ", i, j));
                    }
                }
            }
            bad
        },
    );
    rep.exact(
        "qsympl.r.conj-pair",
        "R_{i'i}^{i'i} = q^-1 for every i",
        || {
            let mut bad = String::new();
            for i in 0..NDIM {
                let ip = conj_index(i);
                if !r.r(ip, i, ip, i).sub(&up(-1)).is_zero() {
                    bad.push_str(&format!("i={} ", i));
                }
            }
            bad
        },
    );
    rep.exact(
        "qsympl.r.correction",
        "R_{23}^{14} = -q^-1 (q - q^-1) (1-based indices)",
        || {
            let want = qdiff().mul(&up(-1)).neg();
            if r.r(1, 2, 0, 3).sub(&want).is_zero() {
                String::new()
            } else {
                format!("got {:?}", r.r(1, 2, 0, 3))
            }
        },
    );
    rep.exact(
        "qsympl.r.yang-baxter",
        "R12 R13 R23 = R23 R13 R12 on C^4 (x) C^4 (x) C^4",
        || {
            let r12 = embed(r, 0, 1);
            let r13 = embed(r, 0, 2);
            let r23 = embed(r, 1, 2);
            let lhs = sparse_mul(&sparse_mul(&r12, &r13), &r23);
            let rhs = sparse_mul(&sparse_mul(&r23, &r13), &r12);
            let mut keys: Vec<_> = lhs.keys().chain(rhs.keys()).collect();
            keys.sort();
            keys.dedup();
            let mut bad = 0usize;
            for k in keys {
                let a = lhs.get(k).cloned().unwrap_or_else(Scalar::zero);
                let b = rhs.get(k).cloned().unwrap_or_else(Scalar::zero);
                if !a.sub(&b).is_zero() {
                    bad += 1;
                }
            }
            if bad == 0 {
                String::new()
            } else {
                format!("{} mismatching components", bad)
            }
        },
    );
}

/// Letter index of the conjugate generator `xb{k+1}` (k = 0..3).
pub fn vl(k: usize) -> u16 {
    (2 * k) as u16
}

/// Letter index of the plain generator `x{k+1}` (k = 0..3).
pub fn xl(k: usize) -> u16 {
    (2 * k + 1) as u16
}

/// The eight sphere generators, interleaved as xb1 < x1 < xb2 < x2 < ...
/// so that each conjugate pair is adjacent in the alphabet.  In sorted
/// normal words the sphere-relation pair `xb4 x4` is then adjacent whenever
/// both letters occur, which keeps the sphere ideal finitely completable.
fn sphere_generators() -> Vec<Generator> {
    let mut gens = Vec::new();
    for i in 0..NDIM {
        gens.push(Generator {
            name: format!("xb{}", i + 1),
            degree: 0,
            weight: (0, 0),
            star_partner: xl(i) as usize,
            form_partner: None,
            hweight: (0, 0),
        });
        gens.push(Generator {
            name: format!("x{}", i + 1),
            degree: 0,
            weight: (0, 0),
            star_partner: vl(i) as usize,
            form_partner: None,
            hweight: (0, 0),
        });
    }
    gens
}

/// Solve a homogeneous linear system of word equations into rewrite rules:
/// repeatedly reduce all equations, then turn the one with the largest
/// leading word into a rule (its leading coefficient must be an invertible
/// monomial).  Fails if an equation can neither be reduced away nor solved.
fn solve_into_rules(sys: &mut RewriteSystem, eqs: &[NCPoly]) -> Result<(), QError> {
    for _round in 0..(eqs.len() + 4) {
        let mut reduced: Vec<NCPoly> = Vec::new();
        for e in eqs {
            let n = sys.normal_form(e)?;
            if !n.is_zero() {
                reduced.push(n);
            }
        }
        if reduced.is_empty() {
            return Ok(());
        }
        reduced.sort_by(|a, b| {
            let wa = a.leading().expect("nonzero").0;
            let wb = b.leading().expect("nonzero").0;
            wb.cmp(wa)
        });
        let mut progressed = false;
        for e in &reduced {
            let (w, c) = e.leading().expect("nonzero");
            let (w, c) = (w.clone(), c.clone());
            let cinv = match c.monomial_inv() {
                Ok(ci) => ci,
                Err(_) => continue,
            };
            let rest = e.sub(&NCPoly::from_term(w.clone(), c));
            if sys.add_rule(w, rest.neg().scale(&cinv)).is_ok() {
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(QError::DerivationMismatch(format!(
                "{} equations left with no solvable leading term",
                reduced.len()
            )));
        }
    }
    Err(QError::DerivationMismatch(
        "rule derivation did not terminate".into(),
    ))
}

/// The three families of tensor equations induced by the R-matrix on the
/// sphere letters: x-x exchange, conjugate-conjugate exchange, and mixed.
fn tensor_equations(r: &RMatrix) -> Vec<NCPoly> {
    let x = xl;
    let v = vl;
    // The exchange eigenvalue is the doubly-repeated top diagonal entry of
    // the R-matrix itself (so an inverted-unit R-matrix stays consistent).
    let q = r.r(NDIM - 1, NDIM - 1, NDIM - 1, NDIM - 1).clone();
    let mut eqs = Vec::new();
    // sum_{k,p} R_{ij}^{kp} x_k x_p - q x_j x_i = 0
    for i in 0..NDIM {
        for j in 0..NDIM {
            let mut e = NCPoly::zero();
            for k in 0..NDIM {
                for p in 0..NDIM {
                    let c = r.r(i, j, k, p);
                    if !c.is_zero() {
                        e.add_term(Word(vec![x(k), x(p)]), c.clone());
                    }
                }
            }
            e.add_term(Word(vec![x(j), x(i)]), q.neg());
            eqs.push(e);
        }
    }
    // sum_{l,k} R_{lk}^{ji} xb_l xb_k - q xb_i xb_j = 0
    for i in 0..NDIM {
        for j in 0..NDIM {
            let mut e = NCPoly::zero();
            for l in 0..NDIM {
                for k in 0..NDIM {
                    let c = r.r(l, k, j, i);
                    if !c.is_zero() {
                        e.add_term(Word(vec![v(l), v(k)]), c.clone());
                    }
                }
            }
            e.add_term(Word(vec![v(i), v(j)]), q.neg());
            eqs.push(e);
        }
    }
    // q x_i xb_p - sum_{j,k} R_{ij}^{kp} xb_j x_k = 0
    for i in 0..NDIM {
        for p in 0..NDIM {
            let mut e = NCPoly::from_term(Word(vec![x(i), v(p)]), q.clone());
            for j in 0..NDIM {
                for k in 0..NDIM {
                    let c = r.r(i, j, k, p);
                    if !c.is_zero() {
                        e.add_term(Word(vec![v(j), x(k)]), c.neg());
                    }
                }
            }
            eqs.push(e);
        }
    }
    eqs
}

/// Derive the quantum 7-sphere rewrite system from the R-matrix: solve the
/// tensor equations into rules, confirm every equation then reduces to
/// zero, and append the sphere relation `sum xb_i x_i = 1` as an ideal rule.
pub fn derive_sphere_relations(r: &RMatrix) -> Result<RewriteSystem, QError> {
    let mut sys = RewriteSystem::new("s7q", sphere_generators(), UnitMode::RealUnit);
    let eqs = tensor_equations(r);
    solve_into_rules(&mut sys, &eqs)?;
    for (n, e) in eqs.iter().enumerate() {
        if !sys.normal_form(e)?.is_zero() {
            return Err(QError::DerivationMismatch(format!(
                "tensor equation {} does not vanish in the derived system",
                n
            )));
        }
    }
    // sphere relation: xb4 x4 -> 1 - xb1 x1 - xb2 x2 - xb3 x3
    let mut rhs = NCPoly::one();
    for i in 0..NDIM - 1 {
        rhs.add_term(Word(vec![vl(i), xl(i)]), Scalar::from_int(-1));
    }
    sys.add_ideal_rule(Word(vec![vl(NDIM - 1), xl(NDIM - 1)]), rhs)?;
    // Complete the sphere ideal with its overlap consequences so that the
    // relation also fires when other letters separate the xb4 x4 pair.
    sys.saturate_overlaps(20)?;
    Ok(sys)
}

/// The quantum 7-sphere together with the R-matrix it was derived from.
#[derive(Clone)]
pub struct QSphere {
    pub r: Arc<RMatrix>,
    pub sys: Arc<RewriteSystem>,
}

pub fn build_qsphere() -> Result<QSphere, QError> {
    let r = build_r();
    let sys = derive_sphere_relations(&r)?;
    Ok(QSphere {
        r: Arc::new(r),
        sys: Arc::new(sys),
    })
}

/// Instanton data on the quantum 7-sphere: the 4x2 module frame Psi, the
/// projection p = Psi Psi*, and the three 4-sphere generators t, a, b.
pub struct QInstanton {
    pub psi: NCMatrix,
    pub p: NCMatrix,
    pub t: NCPoly,
    pub a: NCPoly,
    pub b: NCPoly,
}

/// Build Psi, p, t, a, b and verify: the frame is orthonormal, p is a
/// projection, its entries equal the closed forms in t, a, b, and its
/// matrix trace gives the degree-zero Chern character.
pub fn build_projection_q(qs: &QSphere, rep: &mut Report) -> QInstanton {
    let sys = &qs.sys;
    let pp = |s: &str| sys.parse_poly(s).expect("parseable entry");
    let psi_rows = [
        ["(q^-3) x1", "(q^-2) x2"],
        ["-(q^-1) xb2", "(q^-1) xb1"],
        ["(q^-1) x3", "- x4"],
        ["- xb4", "- xb3"],
    ];
    let psi = NCMatrix::from_fn(sys.clone(), 4, 2, |i, j| pp(psi_rows[i][j]));
    let t = sys.nf(&pp("(q^-2) xb2 x2 + (q^-2) xb1 x1"));
    let a = sys.nf(&pp("(q^-4) x1 xb3 - (q^-2) x2 xb4"));
    let b = sys.nf(&pp("-(q^-3) x1 x4 - (q^-2) x2 x3"));
    let ab = sys.star(&a);
    let bb = sys.star(&b);

    rep.exact(
        "qsympl.frame.orthonormal",
        "Psi* Psi = 1 (the two frame columns are orthonormal)",
        || {
            let g = psi.dagger().mm(&psi);
            if g.eq(&NCMatrix::identity(sys.clone(), 2)) {
                String::new()
            } else {
                "Psi* Psi != 1".into()
            }
        },
    );

    let p = psi.mm(&psi.dagger());
    rep.exact(
        "qsympl.projection.idempotent-selfadjoint",
        "p = Psi Psi* satisfies p^2 = p = p*",
        || match p.check_projection() {
            Ok(()) => String::new(),
            Err(e) => e.to_string(),
        },
    );

    rep.exact(
        "qsympl.projection.closed-form",
        "the entries of p equal their closed forms in t, a, b",
        || {
            let z = NCPoly::zero;
            let expected: [[NCPoly; 4]; 4] = [
                [t.scale(&up(-2)), z(), a.clone(), b.clone()],
                [z(), t.clone(), bb.scale(&up(-2)), ab.scale(&up(2)).neg()],
                [
                    ab.clone(),
                    b.scale(&up(-2)),
                    NCPoly::one().sub(&t.scale(&up(-4))),
                    z(),
                ],
                [
                    bb.clone(),
                    a.scale(&up(2)).neg(),
                    z(),
                    NCPoly::one().sub(&t.scale(&up(2))),
                ],
            ];
            let mut bad = String::new();
            for i in 0..4 {
                for j in 0..4 {
                    if !sys.nf(&p.at(i, j).sub(&expected[i][j])).is_zero() {
                        bad.push_str(&format!("({},{}) ", i, j));
                    }
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.projection.trace",
        "tr(p) = 2 - q^-4 (1 - q^2)(1 - q^4) t",
        || {
            let coeff = up(-4)
                .mul(&Scalar::one().sub(&up(2)))
                .mul(&Scalar::one().sub(&up(4)))
                .neg();
            let want = NCPoly::constant(Scalar::from_int(2)).add(&t.scale(&coeff));
            if sys.nf(&p.trace().sub(&want)).is_zero() {
                String::new()
            } else {
                "trace mismatch".into()
            }
        },
    );

    QInstanton { psi, p, t, a, b }
}

/// Abstract letters of the 4-sphere relation list.
pub(crate) const T_: usize = 0;
pub(crate) const A_: usize = 1;
pub(crate) const AB_: usize = 2;
pub(crate) const B_: usize = 3;
pub(crate) const BB_: usize = 4;

/// The defining relations of the quantum 4-sphere as abstract words in
/// (t, a, abar, b, bbar) with Laurent coefficients in q.
pub(crate) fn s4_relations() -> Vec<(&'static str, Vec<(Scalar, Vec<usize>)>)> {
    let one = Scalar::one;
    vec![
        (
            "sphere.1",
            vec![
                (one(), vec![A_, AB_]),
                (one(), vec![B_, BB_]),
                (up(-2).neg(), vec![T_]),
                (up(-4), vec![T_, T_]),
            ],
        ),
        (
            "sphere.2",
            vec![
                (up(4), vec![AB_, A_]),
                (up(-4), vec![BB_, B_]),
                (one().neg(), vec![T_]),
                (one(), vec![T_, T_]),
            ],
        ),
        (
            "sphere.3",
            vec![
                (one(), vec![B_, BB_]),
                (up(-4).neg(), vec![BB_, B_]),
                (up(-4).sub(&one()), vec![T_, T_]),
            ],
        ),
        (
            "comm.ab",
            vec![(one(), vec![A_, B_]), (up(4).neg(), vec![B_, A_])],
        ),
        (
            "comm.abar-b",
            vec![(one(), vec![AB_, B_]), (one().neg(), vec![B_, AB_])],
        ),
        (
            "comm.ta",
            vec![(one(), vec![T_, A_]), (up(-2).neg(), vec![A_, T_])],
        ),
        (
            "comm.tb",
            vec![(one(), vec![T_, B_]), (up(4).neg(), vec![B_, T_])],
        ),
    ]
}

/// Substitute concrete 7-sphere elements for the abstract 4-sphere letters.
pub(crate) fn substitute(
    sys: &RewriteSystem,
    rel: &[(Scalar, Vec<usize>)],
    images: &[NCPoly; 5],
) -> NCPoly {
    let mut acc = NCPoly::zero();
    for (c, word) in rel {
        let mut m = NCPoly::constant(c.clone());
        for &l in word {
            m = m.mul(&images[l]);
        }
        acc = acc.add(&m);
    }
    sys.nf(&acc)
}

/// Verify the full 4-sphere relation list (and its conjugate list) on the
/// generators t, a, b inside the 7-sphere, plus self-adjointness of t.
pub fn verify_s4q_relations(qs: &QSphere, inst: &QInstanton, rep: &mut Report) {
    let sys = &qs.sys;
    let images: [NCPoly; 5] = [
        inst.t.clone(),
        inst.a.clone(),
        sys.star(&inst.a),
        inst.b.clone(),
        sys.star(&inst.b),
    ];
    for (id, rel) in s4_relations() {
        let val = substitute(sys, &rel, &images);
        rep.exact(
            &format!("qsympl.s4.{}", id),
            "4-sphere relation holds in the 7-sphere",
            || {
                if val.is_zero() {
                    String::new()
                } else {
                    sys.poly_string(&val)
                }
            },
        );
        let conj = sys.nf(&sys.star(&val));
        rep.exact(
            &format!("qsympl.s4.{}.conj", id),
            "conjugate 4-sphere relation holds in the 7-sphere",
            || {
                if conj.is_zero() {
                    String::new()
                } else {
                    sys.poly_string(&conj)
                }
            },
        );
    }
    rep.exact("qsympl.s4.t-selfadjoint", "t* = t", || {
        let d = sys.nf(&sys.star(&inst.t).sub(&inst.t));
        if d.is_zero() {
            String::new()
        } else {
            sys.poly_string(&d)
        }
    });
}

/// Checks of the q -> q^-1 symmetry: (i) the elements q^-2 t, q^2 abar,
/// q^-2 bbar satisfy the inverted-parameter 4-sphere relations inside the
/// same 7-sphere, so the two 4-spheres are isomorphic; (ii) re-deriving the
/// rewrite system from the unit-inverted R-matrix yields exactly the
/// unit-inverted rules.
pub fn q_inverse_checks(qs: &QSphere, inst: &QInstanton, rep: &mut Report) {
    let sys = &qs.sys;
    let phi: [NCPoly; 5] = [
        inst.t.scale(&up(-2)),
        sys.star(&inst.a).scale(&up(2)),
        inst.a.scale(&up(2)),
        sys.star(&inst.b).scale(&up(-2)),
        inst.b.scale(&up(-2)),
    ];
    for (id, rel) in s4_relations() {
        let inv_rel: Vec<(Scalar, Vec<usize>)> = rel
            .iter()
            .map(|(c, w)| (invert_unit_scalar(c), w.clone()))
            .collect();
        let val = substitute(sys, &inv_rel, &phi);
        rep.exact(
            &format!("qsympl.qinv.iso.{}", id),
            "inverted-parameter relation holds on the transformed generators",
            || {
                if val.is_zero() {
                    String::new()
                } else {
                    sys.poly_string(&val)
                }
            },
        );
    }
    rep.exact(
        "qsympl.qinv.rederive",
        "deriving from the q -> q^-1 R-matrix inverts every rewrite rule",
        || {
            let rinv = qs.r.invert_unit();
            let sys2 = match derive_sphere_relations(&rinv) {
                Ok(s) => s,
                Err(e) => return format!("derivation failed: {}", e),
            };
            if sys2.rules.len() != sys.rules.len() {
                return format!(
                    "rule count {} vs {}",
                    sys2.rules.len(),
                    sys.rules.len()
                );
            }
            let by_lhs: BTreeMap<&Word, &NCPoly> =
                sys.rules.iter().map(|r| (&r.lhs, &r.rhs)).collect();
            let mut bad = String::new();
            for r2 in &sys2.rules {
                match by_lhs.get(&r2.lhs) {
                    Some(rhs) => {
                        if !r2.rhs.sub(&invert_unit_poly(rhs)).is_zero() {
                            bad.push_str(&format!("{} ", sys.word_string(&r2.lhs)));
                        }
                    }
                    None => bad.push_str(&format!("missing {} ", sys.word_string(&r2.lhs))),
                }
            }
            bad
        },
    );
}

// ---------------------------------------------------------------------------
// Structure quantum group and the Hopf quotient
// ---------------------------------------------------------------------------

/// Letters of the structure quantum group algebra.
const G_: u16 = 0; // gamma
const GB_: u16 = 1; // gamma*
const AL_: u16 = 2; // alpha
const ALB_: u16 = 3; // alpha*

/// The unitary 2x2 quantum group algebra at deformation q^power: generators
/// gam, gam*, alp, alp* with the standard quasi-commutation and unitarity
/// rules.  power = 1 gives the structure group of the 7-sphere bundle;
/// power = 2 gives the Hopf quotient of the symplectic quantum group.
pub fn build_structure_group(power: i64) -> RewriteSystem {
    let gens = vec![
        Generator {
            name: "gam".into(),
            degree: 0,
            weight: (0, 0),
            star_partner: 1,
            form_partner: None,
            hweight: (0, 0),
        },
        Generator {
            name: "gam*".into(),
            degree: 0,
            weight: (0, 0),
            star_partner: 0,
            form_partner: None,
            hweight: (0, 0),
        },
        Generator {
            name: "alp".into(),
            degree: 0,
            weight: (0, 0),
            star_partner: 3,
            form_partner: None,
            hweight: (0, 0),
        },
        Generator {
            name: "alp*".into(),
            degree: 0,
            weight: (0, 0),
            star_partner: 2,
            form_partner: None,
            hweight: (0, 0),
        },
    ];
    let mut sys = RewriteSystem::new(&format!("su2@q^{}", power), gens, UnitMode::RealUnit);
    let term = |a: u16, b: u16, c: Scalar| NCPoly::from_term(Word(vec![a, b]), c);
    sys.add_rule(Word(vec![GB_, G_]), term(G_, GB_, Scalar::one()))
        .unwrap();
    sys.add_rule(Word(vec![AL_, G_]), term(G_, AL_, up(power)))
        .unwrap();
    sys.add_rule(Word(vec![AL_, GB_]), term(GB_, AL_, up(power)))
        .unwrap();
    sys.add_rule(Word(vec![ALB_, G_]), term(G_, ALB_, up(-power)))
        .unwrap();
    sys.add_rule(Word(vec![ALB_, GB_]), term(GB_, ALB_, up(-power)))
        .unwrap();
    sys.add_rule(
        Word(vec![AL_, ALB_]),
        NCPoly::one().add(&term(G_, GB_, up(2 * power).neg())),
    )
    .unwrap();
    sys.add_rule(
        Word(vec![ALB_, AL_]),
        NCPoly::one().add(&term(G_, GB_, Scalar::from_int(-1))),
    )
    .unwrap();
    sys
}

/// The Hopf quotient of the symplectic quantum group: the unitary 2x2
/// quantum group at q^2 together with the image T' of the defining matrix,
/// which embeds it block-diagonally with trivial corners.
pub struct HopfQuotient {
    pub bq: Arc<RewriteSystem>,
    pub tprime: Vec<Vec<NCPoly>>,
}

pub fn build_hopf_quotient() -> HopfQuotient {
    let bq = Arc::new(build_structure_group(2));
    let g = |l: u16| NCPoly::gen(l);
    let z = NCPoly::zero;
    let tprime = vec![
        vec![NCPoly::one(), z(), z(), z()],
        vec![z(), g(AL_), g(GB_).scale(&up(2)).neg(), z()],
        vec![z(), g(G_), g(ALB_), z()],
        vec![z(), z(), z(), NCPoly::one()],
    ];
    HopfQuotient { bq, tprime }
}

/// Counit on the structure group: alp, alp* -> 1 and gam, gam* -> 0.
fn su_counit(p: &NCPoly) -> Scalar {
    let mut acc = Scalar::zero();
    for (w, c) in &p.terms {
        if w.0.iter().all(|&l| l == AL_ || l == ALB_) {
            acc = acc.add(c);
        }
    }
    acc
}

/// The generating set of the quotient ideal, as (row, col, subtract_one).
fn ideal_generators() -> Vec<(usize, usize, bool)> {
    vec![
        (0, 0, true),
        (3, 3, true),
        (0, 1, false),
        (0, 2, false),
        (0, 3, false),
        (1, 0, false),
        (1, 3, false),
        (2, 0, false),
        (2, 3, false),
        (3, 0, false),
        (3, 1, false),
        (3, 2, false),
    ]
}

/// One component of the exchange equation R T1 T2 = T2 T1 R evaluated on a
/// matrix of algebra elements: component (i,j,r,s) of
/// sum R_{ij}^{kp} T_k^r T_p^s - sum T_j^p T_i^m R_{mp}^{rs}.
fn rtt_component(
    r: &RMatrix,
    t: &[Vec<NCPoly>],
    i: usize,
    j: usize,
    rr: usize,
    s: usize,
) -> NCPoly {
    let mut acc = NCPoly::zero();
    for k in 0..NDIM {
        for p in 0..NDIM {
            let c = r.r(i, j, k, p);
            if !c.is_zero() {
                acc = acc.add(&t[k][rr].mul(&t[p][s]).scale(c));
            }
        }
    }
    for p in 0..NDIM {
        for m in 0..NDIM {
            let c = r.r(m, p, rr, s);
            if !c.is_zero() {
                acc = acc.sub(&t[j][p].mul(&t[i][m]).scale(c));
            }
        }
    }
    acc
}

/// Does `target` equal a nonzero scalar multiple of `cand` (syntactically,
/// in the free algebra)?  Uses cross-multiplication by the leading
/// coefficients so no polynomial division is needed.
fn proportional(target: &NCPoly, cand: &NCPoly) -> bool {
    match (target.leading(), cand.leading()) {
        (Some((wt, ct)), Some((wc, cc))) => {
            if wt != wc {
                return false;
            }
            target.scale(cc).sub(&cand.scale(ct)).is_zero()
        }
        _ => false,
    }
}

/// Checks on the Hopf quotient: the counit kills the quotient ideal, the
/// coproduct maps it into the coideal (checked through the quotient map on
/// both legs), the exchange equations hold for T' and yield the quotient's
/// defining quasi-commutation relations, the symplectic unitarity
/// conditions hold for T' and yield the quotient's unit relations, and the
/// antipode axiom holds on T'.
pub fn hopf_quotient_checks(r: &RMatrix, hq: &HopfQuotient, rep: &mut Report) {
    let bq = &hq.bq;
    let t = &hq.tprime;

    rep.exact(
        "qsympl.hopf.counit",
        "the counit vanishes on every generator of the quotient ideal",
        || {
            let mut bad = String::new();
            for (i, j, sub1) in ideal_generators() {
                let mut v = su_counit(&t[i][j]);
                if sub1 {
                    v = v.sub(&Scalar::one());
                }
                if !v.is_zero() {
                    bad.push_str(&format!("({},{}) ", i, j));
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.hopf.coideal",
        "the coproduct of each ideal generator vanishes under the quotient on both legs",
        || {
            let mut bad = String::new();
            for (i, j, sub1) in ideal_generators() {
                let mut acc = TensorPoly::zero();
                for k in 0..NDIM {
                    acc = acc.add(&TensorPoly::from_pair(&t[i][k], &t[k][j]));
                }
                if sub1 {
                    acc = acc.sub(&TensorPoly::one());
                }
                if !acc.nf(bq, bq).is_zero() {
                    bad.push_str(&format!("({},{}) ", i, j));
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.hopf.rtt",
        "all 256 exchange-equation components hold for T' in the quotient",
        || {
            let mut bad = 0usize;
            for i in 0..NDIM {
                for j in 0..NDIM {
                    for rr in 0..NDIM {
                        for s in 0..NDIM {
                            if !bq.nf(&rtt_component(r, t, i, j, rr, s)).is_zero() {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            if bad == 0 {
                String::new()
            } else {
                format!("{} failing components", bad)
            }
        },
    );

    // Free algebra on the quotient generators: same letters, no rules.
    let free = RewriteSystem::new(
        "su2-free",
        build_structure_group(2).generators,
        UnitMode::RealUnit,
    );
    let mut components: Vec<NCPoly> = Vec::new();
    for i in 0..NDIM {
        for j in 0..NDIM {
            for rr in 0..NDIM {
                for s in 0..NDIM {
                    let c = free.nf(&rtt_component(r, t, i, j, rr, s));
                    if !c.is_zero() {
                        components.push(c);
                    }
                }
            }
        }
    }
    rep.exact(
        "qsympl.hopf.rtt-generates",
        "the quasi-commutation relations of the quotient appear among the exchange components",
        || {
            let term = |a: u16, b: u16, c: Scalar| NCPoly::from_term(Word(vec![a, b]), c);
            let targets = vec![
                term(AL_, G_, Scalar::one()).add(&term(G_, AL_, up(2).neg())),
                term(AL_, GB_, Scalar::one()).add(&term(GB_, AL_, up(2).neg())),
                term(G_, GB_, Scalar::one()).add(&term(GB_, G_, Scalar::from_int(-1))),
            ];
            let mut bad = String::new();
            for (n, tgt) in targets.iter().enumerate() {
                if !components.iter().any(|c| proportional(tgt, c)) {
                    bad.push_str(&format!("relation {} not found ", n));
                }
            }
            bad
        },
    );

    // Symplectic unitarity: T' C T'^t C^-1 = 1 = C T'^t C^-1 T'.
    // (T' C T'^t C^-1)_i^j = T'_i^k C_k^l T'_m^l (C^-1)_m^j
    // (C T'^t C^-1 T')_i^j = C_i^k T'_l^k (C^-1)_l^m T'_m^j
    let mut m1 = vec![vec![NCPoly::zero(); NDIM]; NDIM];
    let mut m2 = vec![vec![NCPoly::zero(); NDIM]; NDIM];
    for i in 0..NDIM {
        for j in 0..NDIM {
            let mut a1 = NCPoly::zero();
            let mut a2 = NCPoly::zero();
            for k in 0..NDIM {
                for l in 0..NDIM {
                    for m in 0..NDIM {
                        let c1 = r.c_entry(k, l).mul(&r.c_inv_entry(m, j));
                        if !c1.is_zero() {
                            a1 = a1.add(&t[i][k].mul(&t[m][l]).scale(&c1));
                        }
                        let c2 = r.c_entry(i, k).mul(&r.c_inv_entry(l, m));
                        if !c2.is_zero() {
                            a2 = a2.add(&t[l][k].mul(&t[m][j]).scale(&c2));
                        }
                    }
                }
            }
            m1[i][j] = a1;
            m2[i][j] = a2;
        }
    }
    rep.exact(
        "qsympl.hopf.metric-unitarity",
        "T' C T'^t C^-1 = 1 = C T'^t C^-1 T' in the quotient",
        || {
            let mut bad = String::new();
            for i in 0..NDIM {
                for j in 0..NDIM {
                    let delta = if i == j { NCPoly::one() } else { NCPoly::zero() };
                    if !bq.nf(&m1[i][j].sub(&delta)).is_zero() {
                        bad.push_str(&format!("left ({},{}) ", i, j));
                    }
                    if !bq.nf(&m2[i][j].sub(&delta)).is_zero() {
                        bad.push_str(&format!("right ({},{}) ", i, j));
                    }
                }
            }
            bad
        },
    );
    rep.exact(
        "qsympl.hopf.metric-generates",
        "the unit relations of the quotient appear among the metric-unitarity components",
        || {
            let mut comps: Vec<NCPoly> = Vec::new();
            for i in 0..NDIM {
                for j in 0..NDIM {
                    let delta = if i == j { NCPoly::one() } else { NCPoly::zero() };
                    for m in [&m1, &m2] {
                        let c = free.nf(&m[i][j].sub(&delta));
                        if !c.is_zero() {
                            comps.push(c);
                        }
                    }
                }
            }
            let term = |a: u16, b: u16, c: Scalar| NCPoly::from_term(Word(vec![a, b]), c);
            let targets = vec![
                term(ALB_, AL_, Scalar::one())
                    .add(&term(GB_, G_, Scalar::one()))
                    .sub(&NCPoly::one()),
                term(AL_, ALB_, Scalar::one())
                    .add(&term(G_, GB_, up(4)))
                    .sub(&NCPoly::one()),
            ];
            let mut bad = String::new();
            for (n, tgt) in targets.iter().enumerate() {
                if !comps.iter().any(|c| proportional(tgt, c)) {
                    bad.push_str(&format!("unit relation {} not found ", n));
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.hopf.antipode",
        "sum_k S(T')_i^k T'_k^j = delta_ij = sum_k T'_i^k S(T')_k^j",
        || {
            // S(T)_i^j = -q^{rho_{i'} + rho_j} eps_i eps_{j'} T_{j'}^{i'}
            let s_entry = |i: usize, j: usize| -> NCPoly {
                let c = up(RHO[conj_index(i)] + RHO[j])
                    .scale(&crate::scalars::FieldElem::from_int(
                        EPS[i] * EPS[conj_index(j)],
                    ))
                    .neg();
                t[conj_index(j)][conj_index(i)].scale(&c)
            };
            let mut bad = String::new();
            for i in 0..NDIM {
                for j in 0..NDIM {
                    let delta = if i == j { NCPoly::one() } else { NCPoly::zero() };
                    let mut left = NCPoly::zero();
                    let mut right = NCPoly::zero();
                    for k in 0..NDIM {
                        left = left.add(&s_entry(i, k).mul(&t[k][j]));
                        right = right.add(&t[i][k].mul(&s_entry(k, j)));
                    }
                    if !bq.nf(&left.sub(&delta)).is_zero() {
                        bad.push_str(&format!("left ({},{}) ", i, j));
                    }
                    if !bq.nf(&right.sub(&delta)).is_zero() {
                        bad.push_str(&format!("right ({},{}) ", i, j));
                    }
                }
            }
            bad
        },
    );
}

/// Random spot checks of exchange-equation components in the quotient,
/// driven by a seeded generator so runs are reproducible.
pub fn rtt_random_checks(
    r: &RMatrix,
    hq: &HopfQuotient,
    seed: u64,
    count: usize,
    rep: &mut Report,
) {
    rep.exact(
        "qsympl.hopf.rtt-random",
        "randomly sampled exchange components hold for T' in the quotient",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = String::new();
            for _ in 0..count {
                let (i, j, rr, s) = (
                    rng.gen_range(0..NDIM),
                    rng.gen_range(0..NDIM),
                    rng.gen_range(0..NDIM),
                    rng.gen_range(0..NDIM),
                );
                if !hq.bq.nf(&rtt_component(r, &hq.tprime, i, j, rr, s)).is_zero() {
                    bad.push_str(&format!("({},{},{},{}) ", i, j, rr, s));
                }
            }
            bad
        },
    );
}

// ---------------------------------------------------------------------------
// Tensor products and the structure-group coaction
// ---------------------------------------------------------------------------

/// An element of a tensor product of two word algebras: a linear
/// combination of (left word, right word) pairs.  The legs commute, so
/// multiplication is componentwise concatenation.
#[derive(Debug, Clone, Default)]
pub struct TensorPoly {
    pub terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn one() -> Self {
        let mut t = TensorPoly::zero();
        t.add_term(Word::empty(), Word::empty(), Scalar::one());
        t
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: Scalar) {
        let e = self
            .terms
            .entry((l, r))
            .or_insert_with(Scalar::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Outer product of two one-leg polynomials.
    pub fn from_pair(l: &NCPoly, r: &NCPoly) -> Self {
        let mut t = TensorPoly::zero();
        for (wl, cl) in &l.terms {
            for (wr, cr) in &r.terms {
                t.add_term(wl.clone(), wr.clone(), cl.mul(cr));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &TensorPoly) -> TensorPoly {
        let mut t = self.clone();
        for ((l, r), c) in &o.terms {
            t.add_term(l.clone(), r.clone(), c.clone());
        }
        t
    }

    pub fn sub(&self, o: &TensorPoly) -> TensorPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TensorPoly {
        let mut t = self.clone();
        for v in t.terms.values_mut() {
            *v = v.neg();
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly {
        let mut t = TensorPoly::zero();
        for ((l, r), v) in &self.terms {
            t.add_term(l.clone(), r.clone(), v.mul(c));
        }
        t
    }

    pub fn mul(&self, o: &TensorPoly) -> TensorPoly {
        let mut t = TensorPoly::zero();
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &o.terms {
                t.add_term(la.concat(lb), ra.concat(rb), ca.mul(cb));
            }
        }
        t
    }

    /// Normalize both legs in their respective systems.
    pub fn nf(&self, left: &RewriteSystem, right: &RewriteSystem) -> TensorPoly {
        let mut t = TensorPoly::zero();
        for ((l, r), c) in &self.terms {
            let pl = left.nf(&NCPoly::from_term(l.clone(), c.clone()));
            let pr = right.nf(&NCPoly::from_term(r.clone(), Scalar::one()));
            for (wl, cl) in &pl.terms {
                for (wr, cr) in &pr.terms {
                    t.add_term(wl.clone(), wr.clone(), cl.mul(cr));
                }
            }
        }
        t
    }

    /// Legwise star (the star of a simple tensor is the tensor of stars).
    pub fn star(&self, left: &RewriteSystem, right: &RewriteSystem) -> TensorPoly {
        let mut t = TensorPoly::zero();
        for ((l, r), c) in &self.terms {
            let pl = left.star(&NCPoly::from_term(l.clone(), c.clone()));
            let pr = right.star(&NCPoly::from_term(r.clone(), Scalar::one()));
            for (wl, cl) in &pl.terms {
                for (wr, cr) in &pr.terms {
                    // both stars conjugated the coefficient of the unit term;
                    // the double conjugation of 1 is harmless since the split
                    // placed the full coefficient on the left leg.
                    t.add_term(wl.clone(), wr.clone(), cl.mul(cr));
                }
            }
        }
        t
    }
}

/// The right coaction of the structure quantum group on the 7-sphere,
/// specified on the letters and extended as an algebra map.
pub struct Coaction {
    pub su: Arc<RewriteSystem>,
    images: Vec<TensorPoly>,
}

pub fn build_coaction(qs: &QSphere) -> Coaction {
    let su = Arc::new(build_structure_group(1));
    let x = |k: usize| Word(vec![xl(k)]);
    let v = |k: usize| Word(vec![vl(k)]);
    let h = |l: u16| Word(vec![l]);
    let mut images = vec![TensorPoly::zero(); 2 * NDIM];
    // conjugate letters
    images[vl(0) as usize].add_term(v(1), h(GB_), up(1));
    images[vl(0) as usize].add_term(v(0), h(ALB_), Scalar::one());
    images[vl(1) as usize].add_term(v(1), h(AL_), Scalar::one());
    images[vl(1) as usize].add_term(v(0), h(G_), Scalar::from_int(-1));
    images[vl(2) as usize].add_term(v(3), h(GB_), up(1).neg());
    images[vl(2) as usize].add_term(v(2), h(ALB_), Scalar::one());
    images[vl(3) as usize].add_term(v(3), h(AL_), Scalar::one());
    images[vl(3) as usize].add_term(v(2), h(G_), Scalar::one());
    // plain letters
    images[xl(0) as usize].add_term(x(0), h(AL_), Scalar::one());
    images[xl(0) as usize].add_term(x(1), h(G_), up(1));
    images[xl(1) as usize].add_term(x(0), h(GB_), Scalar::from_int(-1));
    images[xl(1) as usize].add_term(x(1), h(ALB_), Scalar::one());
    images[xl(2) as usize].add_term(x(2), h(AL_), Scalar::one());
    images[xl(2) as usize].add_term(x(3), h(G_), up(1).neg());
    images[xl(3) as usize].add_term(x(2), h(GB_), Scalar::one());
    images[xl(3) as usize].add_term(x(3), h(ALB_), Scalar::one());
    let _ = qs;
    Coaction { su, images }
}

impl Coaction {
    /// Apply the coaction to a polynomial, multiplying letter images.
    pub fn apply(&self, p: &NCPoly) -> TensorPoly {
        let mut acc = TensorPoly::zero();
        for (w, c) in &p.terms {
            let mut m = TensorPoly::one().scale(c);
            for &l in &w.0 {
                m = m.mul(&self.images[l as usize]);
            }
            acc = acc.add(&m);
        }
        acc
    }
}

/// Verify the coaction: star-compatibility on letters, well-definedness on
/// every rewrite rule of the 7-sphere, the counit law, coinvariance of the
/// 4-sphere generators and of every entry of the projection, and the
/// structural coinvariance of the defining corepresentation columns under
/// the Hopf quotient.
pub fn coaction_checks(
    qs: &QSphere,
    inst: &QInstanton,
    co: &Coaction,
    hq: &HopfQuotient,
    rep: &mut Report,
) {
    let sys = &qs.sys;
    let su = &co.su;

    rep.exact(
        "qsympl.coaction.star",
        "the coaction commutes with the star on every letter",
        || {
            let mut bad = String::new();
            for l in 0..(2 * NDIM) as u16 {
                let p = NCPoly::gen(l);
                let lhs = co.apply(&sys.star(&p));
                let rhs = co.apply(&p).star(sys, su);
                if !lhs.sub(&rhs).nf(sys, su).is_zero() {
                    bad.push_str(&format!("{} ", sys.generators[l as usize].name));
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.coaction.algebra-map",
        "the coaction preserves every rewrite rule of the 7-sphere",
        || {
            let mut bad = String::new();
            for rule in sys.rules.iter().chain(sys.ideal_rules.iter()) {
                let lhs = co.apply(&NCPoly::from_term(rule.lhs.clone(), Scalar::one()));
                let rhs = co.apply(&rule.rhs);
                if !lhs.sub(&rhs).nf(sys, su).is_zero() {
                    bad.push_str(&format!("{} ", sys.word_string(&rule.lhs)));
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.coaction.counit",
        "(id (x) counit) after the coaction is the identity",
        || {
            let samples: Vec<NCPoly> = (0..(2 * NDIM) as u16)
                .map(NCPoly::gen)
                .chain([inst.t.clone(), inst.a.clone(), inst.b.clone()])
                .collect();
            let mut bad = String::new();
            for (n, p) in samples.iter().enumerate() {
                let mut back = NCPoly::zero();
                for ((l, r), c) in &co.apply(p).terms {
                    let eps = su_counit(&NCPoly::from_term(r.clone(), Scalar::one()));
                    if !eps.is_zero() {
                        back.add_term(l.clone(), c.mul(&eps));
                    }
                }
                if !sys.nf(&back.sub(p)).is_zero() {
                    bad.push_str(&format!("sample {} ", n));
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.coaction.coinvariants",
        "t, a, b and every entry of p are coinvariant",
        || {
            let mut targets: Vec<(String, NCPoly)> = vec![
                ("t".into(), inst.t.clone()),
                ("a".into(), inst.a.clone()),
                ("b".into(), inst.b.clone()),
                ("a*".into(), sys.star(&inst.a)),
                ("b*".into(), sys.star(&inst.b)),
            ];
            for i in 0..4 {
                for j in 0..4 {
                    targets.push((format!("p({},{})", i, j), inst.p.at(i, j).clone()));
                }
            }
            let mut bad = String::new();
            for (name, f) in &targets {
                let want = TensorPoly::from_pair(&sys.nf(f), &NCPoly::one());
                if !co.apply(f).sub(&want).nf(sys, su).is_zero() {
                    bad.push_str(&format!("{} ", name));
                }
            }
            bad
        },
    );

    rep.exact(
        "qsympl.coaction.quotient-columns",
        "under the Hopf quotient the first and last columns of T' are delta columns, \
         so the defining sphere letters are coinvariant for the quotient coaction",
        || {
            let mut bad = String::new();
            for k in 0..NDIM {
                let want0 = if k == 0 { NCPoly::one() } else { NCPoly::zero() };
                let want3 = if k == NDIM - 1 {
                    NCPoly::one()
                } else {
                    NCPoly::zero()
                };
                if !hq.bq.nf(&hq.tprime[k][0].sub(&want0)).is_zero() {
                    bad.push_str(&format!("col1 row{} ", k));
                }
                if !hq.bq.nf(&hq.tprime[k][NDIM - 1].sub(&want3)).is_zero() {
                    bad.push_str(&format!("col4 row{} ", k));
                }
            }
            bad
        },
    );
}

/// Run the full symplectic-sphere suite into one report.
pub fn run_suite(seed: u64, rep: &mut Report) -> Result<(), QError> {
    let qs = build_qsphere()?;
    r_structure_checks(&qs.r, rep);
    rep.exact(
        "qsympl.s7.confluence",
        "no unresolved overlap ambiguities, with and without the sphere ideal",
        || {
            let with = qs.sys.check_overlaps();
            let without = qs.sys.without_ideal().check_overlaps();
            let mut bad = String::new();
            if !with.ambiguities.is_empty() {
                bad.push_str(&format!("{} with ideal ", with.ambiguities.len()));
            }
            if !without.ambiguities.is_empty() {
                bad.push_str(&format!("{} without ideal", without.ambiguities.len()));
            }
            bad
        },
    );
    let inst = build_projection_q(&qs, rep);
    verify_s4q_relations(&qs, &inst, rep);
    q_inverse_checks(&qs, &inst, rep);
    let hq = build_hopf_quotient();
    hopf_quotient_checks(&qs.r, &hq, rep);
    rtt_random_checks(&qs.r, &hq, seed, 50, rep);
    let co = build_coaction(&qs);
    coaction_checks(&qs, &inst, &co, &hq, rep);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_yields_expected_rule_count() {
        let qs = build_qsphere().unwrap();
        // 6 exchange rules per one-sided family plus 16 mixed rules.
        assert_eq!(qs.sys.rules.len(), 28);
        // The sphere relation plus whatever overlap completion adds.
        assert!(!qs.sys.ideal_rules.is_empty());
    }

    #[test]
    fn structure_group_is_confluent() {
        for power in [1, 2] {
            let su = build_structure_group(power);
            assert!(su.check_overlaps().ambiguities.is_empty());
        }
    }

    #[test]
    fn metric_squares_to_minus_one() {
        // C^2 = -1 for the rank-two symplectic metric.
        let r = build_r();
        for i in 0..NDIM {
            for j in 0..NDIM {
                let mut acc = Scalar::zero();
                for k in 0..NDIM {
                    acc = acc.add(&r.c_entry(i, k).mul(&r.c_entry(k, j)));
                }
                let want = if i == j {
                    Scalar::from_int(-1)
                } else {
                    Scalar::zero()
                };
                assert!(acc.sub(&want).is_zero(), "({}, {})", i, j);
            }
        }
    }

    #[test]
    fn unit_inversion_is_an_involution() {
        let s = up(3).add(&up(-2).scale(&crate::scalars::FieldElem::from_int(5)));
        assert!(invert_unit_scalar(&invert_unit_scalar(&s)).sub(&s).is_zero());
    }
}
