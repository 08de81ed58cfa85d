//! Hodge star on two-forms of the toric 4-sphere.
//!
//! The classical star on tangential 2-forms of the round unit 4-sphere in
//! five-space is the contraction with the unit normal of the flat five-space
//! star, S = i_nu . *_5. It satisfies S^2 = (tangential projection) and
//! S^3 = S, so S restricts to an involution on tangential forms. The map is
//! computed exactly in the generator basis {dz_a dz_b} with coefficients
//! linear in the coordinates, then transported to the deformed sphere by the
//! weight-phase rule *(L(w)) = L(*(w)) for the quantization map L that
//! multiplies a classical monomial by the inverse of its reordering phase.

use crate::ncalg::{NCPoly, RewriteSystem, Word};
use crate::ncmatrix::NCMatrix;
use crate::report::Report;
use crate::scalars::{FieldElem, Scalar, UnitMode};
use crate::theta::{build_theta_spheres, theta_hat_s4, InstantonData, ThetaConfig, ThetaSpheres};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::Arc;

/// Index of the first one-form generator in the 4-sphere system.
const FORM0: u16 = 5;

/// Star table on the deformed 4-sphere: basis 2-form word (a, b) with
/// a < b one-form letters, mapped to a normalized 2-form with left function
/// coefficients.
pub struct HodgeTable {
    pub table: HashMap<(u16, u16), NCPoly>,
    pub sys: Arc<RewriteSystem>,
    /// Sign of the five-space volume orientation used by the construction.
    pub orientation: i64,
}

/// Complex letter -> expansion over the real one-form (or coordinate) basis:
/// z0 = x0, z1 = x1 + i x2, z2 = x3 + i x4.
fn real_expansion(letter: u16) -> [FieldElem; 5] {
    let o = FieldElem::one;
    let i = FieldElem::i;
    let z = FieldElem::zero;
    match letter {
        0 => [o(), z(), z(), z(), z()],
        1 => [z(), o(), i(), z(), z()],
        2 => [z(), o(), i().neg(), z(), z()],
        3 => [z(), z(), z(), o(), i()],
        4 => [z(), z(), z(), o(), i().neg()],
        _ => panic!("degree-0 letter expected"),
    }
}

/// The real coordinate x_i as a polynomial in the complex generators.
fn x_poly(i: usize) -> NCPoly {
    // x0 = z0; x1 = (z1 + z1*)/2; x2 = -i/2 (z1 - z1*); likewise x3, x4.
    let half = FieldElem::from_ratio(1, 2);
    let mihalf = FieldElem::i().neg().mul(&half); // -i/2
    let mut p = NCPoly::zero();
    let term = |g: u16, c: FieldElem| (Word(vec![g]), Scalar::from_field(c));
    let mut add = |g: u16, c: FieldElem| {
        let (w, s) = term(g, c);
        p.add_term(w, s);
    };
    match i {
        0 => add(0, FieldElem::one()),
        1 => {
            add(1, half.clone());
            add(2, half);
        }
        2 => {
            add(1, mihalf.clone());
            add(2, mihalf.neg());
        }
        3 => {
            add(3, half.clone());
            add(4, half);
        }
        4 => {
            add(3, mihalf.clone());
            add(4, mihalf.neg());
        }
        _ => panic!("coordinate index"),
    }
    p
}

/// The real one-form dx_i in the complex generator basis.
fn dx_poly(i: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    for (w, c) in x_poly(i).terms {
        p.add_term(Word(vec![w.0[0] + FORM0]), c);
    }
    p
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// S(dx_i dx_j) = i_nu *_5 (dx_i dx_j), expanded and normalized in `sys`
/// (the classical 4-sphere system).
fn star_real(sys: &RewriteSystem, i: usize, j: usize, orientation: i64) -> NCPoly {
    let rest: Vec<usize> = (0..5).filter(|&k| k != i && k != j).collect();
    let mut perm = vec![i, j];
    perm.extend_from_slice(&rest);
    let eps = perm_sign(&perm) * orientation;
    // i_nu (dx_k dx_l dx_m) = x_k dx_l dx_m - x_l dx_k dx_m + x_m dx_k dx_l
    let (k, l, m) = (rest[0], rest[1], rest[2]);
    let t1 = x_poly(k).mul(&dx_poly(l)).mul(&dx_poly(m));
    let t2 = x_poly(l).mul(&dx_poly(k)).mul(&dx_poly(m)).neg();
    let t3 = x_poly(m).mul(&dx_poly(k)).mul(&dx_poly(l));
    sys.nf(&t1.add(&t2).add(&t3).scale(&Scalar::from_int(eps)))
}

/// The classical star of the complex basis 2-form dz_a dz_b (letters a < b),
/// normalized in the classical system.
fn star_complex(sys: &RewriteSystem, a: u16, b: u16, orientation: i64) -> NCPoly {
    let ca = real_expansion(a - FORM0);
    let cb = real_expansion(b - FORM0);
    let mut out = NCPoly::zero();
    for i in 0..5 {
        for j in (i + 1)..5 {
            // coefficient of dx_i dx_j in dz_a dz_b
            let c = ca[i].mul(&cb[j]).sub(&ca[j].mul(&cb[i]));
            if c.is_zero() {
                continue;
            }
            out = out.add(&star_real(sys, i, j, orientation).scale(&Scalar::from_field(c)));
        }
    }
    sys.nf(&out)
}

/// Reordering phase of a sorted word: the quantization map L sends the
/// classical monomial x_w to mu^(-sum_{i<j} w_i Theta w_j) times the deformed
/// sorted word, making L multiplicative up to the clean bilinear phase
/// mu^(w_u Theta w_v) on products of homogeneous elements.
fn quantize_word(sys: &RewriteSystem, w: &Word) -> Scalar {
    let th = theta_hat_s4();
    let mut k = BigRational::zero();
    for i in 0..w.len() {
        for j in (i + 1)..w.len() {
            let wi = sys.generators[w.0[i] as usize].weight;
            let wj = sys.generators[w.0[j] as usize].weight;
            let big = |n: i64| BigRational::from_integer(BigInt::from(n));
            k += &th[0][1] * big(wi.0 * wj.1) + &th[1][0] * big(wi.1 * wj.0);
        }
    }
    assert!(k.is_integer(), "integral quantization phase");
    Scalar::unit_pow(-k.to_integer().to_i64().expect("small phase"))
}

impl HodgeTable {
    /// Apply the star to a homogeneous 2-form with left function
    /// coefficients: every normal word ends in exactly two one-form letters.
    pub fn star2(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            assert!(w.len() >= 2, "2-form word expected");
            let (fa, fb) = (w.0[w.len() - 2], w.0[w.len() - 1]);
            assert!(fa >= FORM0 && fb >= FORM0, "2-form word expected");
            let prefix = NCPoly::from_term(Word(w.0[..w.len() - 2].to_vec()), c.clone());
            let starred = &self.table[&(fa, fb)];
            out = out.add(&self.sys.mul_nf(&prefix, starred));
        }
        self.sys.nf(&out)
    }

    /// Apply the star entrywise to a matrix of 2-forms.
    pub fn star2_matrix(&self, m: &NCMatrix) -> NCMatrix {
        NCMatrix::from_fn(self.sys.clone(), m.rows, m.cols, |i, j| {
            self.star2(m.at(i, j))
        })
    }
}

fn build_hodge_oriented(ts: &ThetaSpheres, orientation: i64) -> HodgeTable {
    // Classical system for the exact geometric construction.
    let cl = if ts.cfg.is_classical() {
        ts.clone()
    } else {
        build_theta_spheres(&ThetaConfig::from_ratio(0, 1))
    };
    let mut table = HashMap::new();
    for a in FORM0..FORM0 + 5 {
        for b in (a + 1)..FORM0 + 5 {
            let classical = star_complex(&cl.s4, a, b, orientation);
            let entry = if ts.cfg.is_classical() {
                classical
            } else {
                // *(W_ab) = mu^(2 w_a Theta w_b) L(classical table entry)
                let mut out = NCPoly::zero();
                for (w, c) in &classical.terms {
                    out.add_term(w.clone(), c.mul(&quantize_word(&ts.s4, w)));
                }
                let input_phase = quantize_word(&ts.s4, &Word(vec![a, b]))
                    .monomial_inv()
                    .expect("unit phase");
                ts.s4.nf(&out.scale(&input_phase))
            };
            table.insert((a, b), entry);
        }
    }
    HodgeTable {
        table,
        sys: ts.s4.clone(),
        orientation,
    }
}

/// Orientation fixed so that the instanton curvature is self-dual,
/// star(F0) = +F0; the acceptance suite rejects the opposite sign.
pub fn build_hodge(ts: &ThetaSpheres, rep: &mut Report) -> HodgeTable {
    let h = build_hodge_oriented(ts, -1);

    rep.exact(
        "hodge.weight_preserved",
        "star table preserves the torus weight of every basis 2-form",
        || {
            for (&(a, b), entry) in &h.table {
                let wa = ts.s4.generators[a as usize].weight;
                let wb = ts.s4.generators[b as usize].weight;
                let expect = (wa.0 + wb.0, wa.1 + wb.1);
                for w in entry.terms.keys() {
                    if ts.s4.weight(w) != expect {
                        return format!(
                            "entry ({},{}) word {} weight {:?} != {:?}",
                            a,
                            b,
                            ts.s4.word_string(w),
                            ts.s4.weight(w),
                            expect
                        );
                    }
                }
            }
            String::new()
        },
    );

    rep.exact(
        "hodge.cube_identity",
        "star(star(star(beta))) = star(beta) for every basis 2-form (S^3 = S)",
        || {
            for (&(a, b), _) in &h.table {
                let beta = NCPoly::from_term(Word(vec![a, b]), Scalar::one());
                let s1 = h.star2(&beta);
                let s3 = h.star2(&h.star2(&s1));
                let d = ts.s4.nf(&s3.sub(&s1));
                if !d.is_zero() {
                    return format!("basis ({},{}): {}", a, b, ts.s4.poly_string(&d));
                }
            }
            String::new()
        },
    );

    rep.exact(
        "hodge.involution_on_tangential",
        "star . star = id on tangential 2-forms (images of the projection S^2)",
        || {
            for (&(a, b), _) in &h.table {
                let beta = NCPoly::from_term(Word(vec![a, b]), Scalar::one());
                let tang = h.star2(&h.star2(&beta));
                let d = ts.s4.nf(&h.star2(&h.star2(&tang)).sub(&tang));
                if !d.is_zero() {
                    return format!("basis ({},{}): {}", a, b, ts.s4.poly_string(&d));
                }
            }
            String::new()
        },
    );

    if ts.cfg.is_classical() {
        rep.check(
            "hodge.numeric_oracle",
            "table agrees with the frame-based numeric Hodge star at 20 random points",
            || {
                let err = numeric_oracle(&h, 20, 0xC0FFEE);
                (err < 1e-10, format!("max err {:.3e}", err))
            },
        );
    }

    h
}

/// Orientation-reversed table, for anti-self-duality cross-checks.
pub fn build_hodge_reversed(ts: &ThetaSpheres) -> HodgeTable {
    build_hodge_oriented(ts, 1)
}

pub fn self_duality_check(
    ts: &ThetaSpheres,
    data: &InstantonData,
    h: &HodgeTable,
    rep: &mut Report,
) {
    rep.exact("hodge.self_duality", "star(F0) = F0", || {
        let d = h.star2_matrix(&data.f0).sub(&data.f0);
        if d.is_zero() {
            String::new()
        } else {
            d.pretty()
        }
    });

    rep.exact(
        "hodge.antiself_duality_reversed",
        "the orientation-reversed star maps F0 to -F0",
        || {
            let hrev = build_hodge_reversed(ts);
            let d = hrev.star2_matrix(&data.f0).add(&data.f0);
            if d.is_zero() {
                String::new()
            } else {
                d.pretty()
            }
        },
    );

    rep.exact("hodge.zero_form", "star(0) = 0", || {
        let z = NCMatrix::zero(ts.s4.clone(), 2, 2);
        let d = h.star2_matrix(&z);
        if d.is_zero() {
            String::new()
        } else {
            d.pretty()
        }
    });
}

// ---------------------------------------------------------------------------
// Numeric classical oracle
// ---------------------------------------------------------------------------

fn det5(m: &[[f64; 5]; 5]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for c in 0..5 {
        let (mut piv, mut best) = (c, a[c][c].abs());
        for r in (c + 1)..5 {
            if a[r][c].abs() > best {
                piv = r;
                best = a[r][c].abs();
            }
        }
        if best < 1e-14 {
            return 0.0;
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c];
        for r in (c + 1)..5 {
            let f = a[r][c] / a[c][c];
            for k in c..5 {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

/// Compare the classical table against a pointwise Hodge star computed in an
/// orthonormal tangent frame at random points of the unit 4-sphere. Returns
/// the maximum componentwise deviation.
fn numeric_oracle(h: &HodgeTable, points: usize, seed: u64) -> f64 {
    let sys = &h.sys;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    for _ in 0..points {
        // Random point on S^4.
        let mut x = [0.0f64; 5];
        loop {
            let mut n = 0.0;
            for xi in x.iter_mut() {
                *xi = rng.gen::<f64>() * 2.0 - 1.0;
                n += *xi * *xi;
            }
            if n > 1e-3 {
                let n = n.sqrt();
                for xi in x.iter_mut() {
                    *xi /= n;
                }
                break;
            }
        }
        // Orthonormal tangent frame by Gram-Schmidt of projected axes.
        let mut frame: Vec<[f64; 5]> = Vec::new();
        for e in 0..5 {
            let mut v = [0.0f64; 5];
            v[e] = 1.0;
            let dot: f64 = (0..5).map(|i| v[i] * x[i]).sum();
            for i in 0..5 {
                v[i] -= dot * x[i];
            }
            for t in &frame {
                let d: f64 = (0..5).map(|i| v[i] * t[i]).sum();
                for i in 0..5 {
                    v[i] -= d * t[i];
                }
            }
            let n: f64 = (0..5).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
            if n > 1e-6 {
                for vi in v.iter_mut() {
                    *vi /= n;
                }
                frame.push(v);
                if frame.len() == 4 {
                    break;
                }
            }
        }
        // Orientation of (normal, frame) relative to the standard one.
        let mut mat = [[0.0f64; 5]; 5];
        mat[0] = x;
        for (k, t) in frame.iter().enumerate() {
            mat[k + 1] = *t;
        }
        let orient = (if det5(&mat) > 0.0 { 1.0 } else { -1.0 }) * h.orientation as f64;

        // Complex coordinate values at the point.
        let zval = |letter: u16| -> Complex64 {
            match letter {
                0 => Complex64::new(x[0], 0.0),
                1 => Complex64::new(x[1], x[2]),
                2 => Complex64::new(x[1], -x[2]),
                3 => Complex64::new(x[3], x[4]),
                4 => Complex64::new(x[3], -x[4]),
                _ => panic!("letter"),
            }
        };
        // Convert a normalized 2-form polynomial into a complex antisymmetric
        // component matrix over the real one-form basis.
        let components = |p: &NCPoly| -> [[Complex64; 5]; 5] {
            let mut b = [[Complex64::new(0.0, 0.0); 5]; 5];
            for (w, c) in &p.terms {
                let (fa, fb) = (w.0[w.len() - 2], w.0[w.len() - 1]);
                let mut val = c.eval(Complex64::new(1.0, 0.0), UnitMode::PhaseUnit).unwrap();
                for &g in &w.0[..w.len() - 2] {
                    val *= zval(g);
                }
                let ca = real_expansion(fa - FORM0);
                let cb = real_expansion(fb - FORM0);
                let ev = |f: &FieldElem| f.eval();
                for i in 0..5 {
                    for j in 0..5 {
                        b[i][j] += val * ev(&ca[i]) * ev(&cb[j]);
                        b[i][j] -= val * ev(&ca[j]) * ev(&cb[i]);
                    }
                }
            }
            b
        };

        for (&(a, bb), entry) in &h.table {
            let beta = NCPoly::from_term(Word(vec![a, bb]), Scalar::one());
            let bmat = components(&sys.nf(&beta));
            // Tangential frame components.
            let mut bf = [[Complex64::new(0.0, 0.0); 4]; 4];
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for i in 0..5 {
                        for j in 0..5 {
                            acc += Complex64::new(frame[k][i] * frame[l][j], 0.0) * bmat[i][j];
                        }
                    }
                    bf[k][l] = acc;
                }
            }
            // Frame Hodge star of the tangential part.
            let mut sf = [[Complex64::new(0.0, 0.0); 4]; 4];
            for k in 0..4 {
                for l in 0..4 {
                    if k == l {
                        continue;
                    }
                    for m in 0..4 {
                        for n in 0..4 {
                            if m == n || m == k || m == l || n == k || n == l {
                                continue;
                            }
                            let sign = perm_sign(&[k, l, m, n]) as f64 * orient;
                            sf[k][l] += Complex64::new(0.5 * sign, 0.0) * bf[m][n];
                        }
                    }
                }
            }
            // Back to ambient components.
            let mut expect = [[Complex64::new(0.0, 0.0); 5]; 5];
            for k in 0..4 {
                for l in 0..4 {
                    for i in 0..5 {
                        for j in 0..5 {
                            expect[i][j] +=
                                sf[k][l] * Complex64::new(frame[k][i] * frame[l][j], 0.0);
                        }
                    }
                }
            }
            // Rewriting shifts ambient components by multiples of the
            // constraint sum_i x_i dx_i = 0, so compare tangential parts.
            let got = components(entry);
            let mut got_tan = [[Complex64::new(0.0, 0.0); 5]; 5];
            for i in 0..5 {
                for j in 0..5 {
                    for a2 in 0..5 {
                        for c2 in 0..5 {
                            let pa = ((i == a2) as i64 as f64) - x[i] * x[a2];
                            let pc = ((j == c2) as i64 as f64) - x[j] * x[c2];
                            got_tan[i][j] += Complex64::new(pa * pc, 0.0) * got[a2][c2];
                        }
                    }
                }
            }
            for i in 0..5 {
                for j in 0..5 {
                    max_err = max_err.max((got_tan[i][j] - expect[i][j]).norm());
                }
            }
        }
    }
    max_err
}
