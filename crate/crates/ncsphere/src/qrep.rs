//! The infinite-dimensional representation of the quantum 4-sphere on a
//! truncated Hilbert space, its traces, and the index pairings.
//!
//! The representation acts on basis vectors `|m,n>` with `0 <= m,n < N`:
//! `t` is diagonal with eigenvalue `q^{2m+4n+4}`, `abar`/`a` raise/lower
//! `m`, and `b`/`bbar` raise/lower `n`, with square-root coefficients.
//! Every generator maps a basis vector to at most one basis vector, so
//! operators are generalized permutations and all computations walk basis
//! states instead of materializing matrices.  Relation residuals are
//! asserted on the interior of the window only, excluding truncation edge
//! effects.
//!
//! The same machinery provides the numeric oracle that cross-checks the
//! symbolic rewrite engine on random 4-sphere elements; faithfulness of
//! the representation on the polynomial algebra is assumed for that role.

use crate::ncalg::NCPoly;
use crate::qsympl::{self, QInstanton, QSphere};
use crate::report::Report;
use crate::scalars::{Scalar, UnitMode};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QRepError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown letter index {0}")]
    UnknownLetter(usize),
}

/// Letter indices shared with the symbolic 4-sphere relation list:
/// t, a, abar, b, bbar.
pub const LT: usize = 0;
pub const LA: usize = 1;
pub const LAB: usize = 2;
pub const LB: usize = 3;
pub const LBB: usize = 4;

/// Truncated representation parameters; the basis is `|m,n>` with
/// `0 <= m,n < cutoff`.
#[derive(Debug, Clone)]
pub struct SigmaRep {
    pub q: f64,
    pub cutoff: usize,
}

/// Result of applying a word of letters to one basis vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WordAction {
    /// Annihilated by a lowering operator at the bottom row.
    Zero,
    /// Left the truncation window through the cutoff wall.
    Truncated,
    /// Landed on a basis vector with the given amplitude.
    To(f64, (usize, usize)),
}

pub fn build_sigma(q: f64, cutoff: usize) -> Result<SigmaRep, QRepError> {
    if !(0.0 < q && q < 1.0) {
        return Err(QRepError::BadParameter(format!(
            "the deformation parameter must satisfy 0 < q < 1, got {}",
            q
        )));
    }
    if cutoff < 4 {
        return Err(QRepError::BadParameter(format!(
            "cutoff must be at least 4, got {}",
            cutoff
        )));
    }
    Ok(SigmaRep { q, cutoff })
}

impl SigmaRep {
    /// Eigenvalue of `t` on `|m,n>`.
    pub fn t_eig(&self, m: usize, n: usize) -> f64 {
        self.q.powi(2 * m as i32 + 4 * n as i32 + 4)
    }

    /// Coefficient of the `m`-raising generator: `abar|m,n> = a_{mn}|m+1,n>`.
    pub fn coeff_a(&self, m: usize, n: usize) -> f64 {
        (1.0 - self.q.powi(2 * m as i32 + 2)).sqrt() * self.q.powi(m as i32 + 2 * n as i32 + 1)
    }

    /// Coefficient of the `n`-raising generator: `b|m,n> = b_{mn}|m,n+1>`.
    pub fn coeff_b(&self, m: usize, n: usize) -> f64 {
        (1.0 - self.q.powi(4 * n as i32 + 4)).sqrt() * self.q.powi(2 * (m as i32 + n as i32 + 2))
    }

    /// Apply one letter to `|m,n>`.
    pub fn apply_letter(&self, l: usize, state: (usize, usize)) -> Result<WordAction, QRepError> {
        let (m, n) = state;
        Ok(match l {
            LT => WordAction::To(self.t_eig(m, n), (m, n)),
            LAB => {
                if m + 1 >= self.cutoff {
                    WordAction::Truncated
                } else {
                    WordAction::To(self.coeff_a(m, n), (m + 1, n))
                }
            }
            LA => {
                if m == 0 {
                    WordAction::Zero
                } else {
                    WordAction::To(self.coeff_a(m - 1, n), (m - 1, n))
                }
            }
            LB => {
                if n + 1 >= self.cutoff {
                    WordAction::Truncated
                } else {
                    WordAction::To(self.coeff_b(m, n), (m, n + 1))
                }
            }
            LBB => {
                if n == 0 {
                    WordAction::Zero
                } else {
                    WordAction::To(self.coeff_b(m, n - 1), (m, n - 1))
                }
            }
            _ => return Err(QRepError::UnknownLetter(l)),
        })
    }

    /// Apply a word (product read left to right, acting rightmost first).
    pub fn apply_word(&self, word: &[usize], state: (usize, usize)) -> Result<WordAction, QRepError> {
        let mut amp = 1.0;
        let mut s = state;
        for &l in word.iter().rev() {
            match self.apply_letter(l, s)? {
                WordAction::Zero => return Ok(WordAction::Zero),
                WordAction::Truncated => return Ok(WordAction::Truncated),
                WordAction::To(a, t) => {
                    amp *= a;
                    s = t;
                }
            }
        }
        Ok(WordAction::To(amp, s))
    }

    /// Apply a polynomial (list of coefficient-word terms) to one basis
    /// vector.  Returns `None` when any term crosses the cutoff wall, so
    /// callers can restrict to the interior.
    pub fn apply_poly(
        &self,
        terms: &[(Complex64, Vec<usize>)],
        state: (usize, usize),
    ) -> Result<Option<HashMap<(usize, usize), Complex64>>, QRepError> {
        let mut out: HashMap<(usize, usize), Complex64> = HashMap::new();
        for (c, w) in terms {
            match self.apply_word(w, state)? {
                WordAction::Zero => {}
                WordAction::Truncated => return Ok(None),
                WordAction::To(a, t) => {
                    *out.entry(t).or_insert(Complex64::new(0.0, 0.0)) += c * a;
                }
            }
        }
        Ok(Some(out))
    }

    /// Trace of a word operator over the window: sum of diagonal
    /// amplitudes over states the word maps to themselves.
    pub fn word_trace(&self, word: &[usize]) -> Result<f64, QRepError> {
        let mut tr = 0.0;
        for m in 0..self.cutoff {
            for n in 0..self.cutoff {
                if let WordAction::To(a, t) = self.apply_word(word, (m, n))? {
                    if t == (m, n) {
                        tr += a;
                    }
                }
            }
        }
        Ok(tr)
    }

    /// Partial trace of `t`: the direct double sum of its eigenvalues.
    pub fn trace_t(&self) -> f64 {
        let mut tr = 0.0;
        for m in 0..self.cutoff {
            for n in 0..self.cutoff {
                tr += self.t_eig(m, n);
            }
        }
        tr
    }

    /// The exact truncated geometric closed form
    /// `q^4 (1-q^{2N})(1-q^{4N}) / ((1-q^2)(1-q^4))`.
    pub fn trace_t_closed(&self) -> f64 {
        let q = self.q;
        let n = self.cutoff as i32;
        q.powi(4) * (1.0 - q.powi(2 * n)) * (1.0 - q.powi(4 * n))
            / ((1.0 - q.powi(2)) * (1.0 - q.powi(4)))
    }
}

/// The untruncated limit `q^4 / ((1-q^2)(1-q^4))`.
pub fn trace_t_limit(q: f64) -> f64 {
    q.powi(4) / ((1.0 - q.powi(2)) * (1.0 - q.powi(4)))
}

/// Evaluate a Laurent coefficient at the real deformation parameter.
fn eval_scalar(c: &Scalar, q: f64) -> Complex64 {
    c.eval(Complex64::new(q, 0.0), UnitMode::RealUnit)
        .expect("nonzero real parameter")
}

fn eval_terms(rel: &[(Scalar, Vec<usize>)], q: f64) -> Vec<(Complex64, Vec<usize>)> {
    rel.iter()
        .map(|(c, w)| (eval_scalar(c, q), w.clone()))
        .collect()
}

/// The degree-zero Chern character of the instanton projection as abstract
/// letter terms: `2 - q^-4 (1-q^2)(1-q^4) t`.
pub fn chern0_terms() -> Vec<(Scalar, Vec<usize>)> {
    let u = Scalar::unit_pow;
    let coeff = u(-4)
        .mul(&Scalar::one().sub(&u(2)))
        .mul(&Scalar::one().sub(&u(4)))
        .neg();
    vec![(Scalar::from_int(2), Vec::new()), (coeff, vec![LT])]
}

/// The trace defined by the one-dimensional representation: kill every
/// generator, keep the constant term.
pub fn tau0(terms: &[(Scalar, Vec<usize>)]) -> Scalar {
    let mut out = Scalar::zero();
    for (c, w) in terms {
        if w.is_empty() {
            out = out.add(c);
        }
    }
    out
}

/// The trace-class cocycle: constants cancel between the two summands of
/// the Fredholm module, so only non-constant terms are traced.
pub fn tau1(rep: &SigmaRep, terms: &[(Scalar, Vec<usize>)]) -> Result<f64, QRepError> {
    let mut tr = 0.0;
    for (c, w) in terms {
        if w.is_empty() {
            continue;
        }
        let cv = eval_scalar(c, rep.q);
        tr += cv.re * rep.word_trace(w)?;
    }
    Ok(tr)
}

/// The truncated index pairing `tau1(ch0(p))`; converges to -1.
pub fn index_pairing(rep: &SigmaRep) -> Result<f64, QRepError> {
    tau1(rep, &chern0_terms())
}

/// Structural checks of the representation: spot values, highest-weight
/// annihilation, adjoint pairing, operator norms, the coefficient
/// recursions, every 4-sphere relation on the interior window, the trace
/// closed forms, and the pairings.
pub fn sigma_checks(q: f64, cutoff: usize, rep: &mut Report) {
    let sr = match build_sigma(q, cutoff) {
        Ok(s) => s,
        Err(e) => {
            rep.check("qrep.build", "representation builds", || {
                (false, format!("{}", e))
            });
            return;
        }
    };
    let tol = 1e-10;

    rep.check(
        "qrep.spot",
        "t|0,0> = q^4 |0,0>, abar|0,0> = sqrt(1-q^2) q |1,0>, a|0,0> = 0",
        || {
            let t00 = (sr.t_eig(0, 0) - q.powi(4)).abs();
            let ab00 = (sr.coeff_a(0, 0) - (1.0 - q * q).sqrt() * q).abs();
            let a0 = sr.apply_letter(LA, (0, 0)).unwrap() == WordAction::Zero;
            let bb0 = sr.apply_letter(LBB, (0, 0)).unwrap() == WordAction::Zero;
            (
                t00 < tol && ab00 < tol && a0 && bb0,
                format!("|t00 - q^4| = {:.2e}, |abar00 - closed form| = {:.2e}", t00, ab00),
            )
        },
    );

    rep.check(
        "qrep.adjoint",
        "the raising and lowering operators are exact mutual adjoints",
        || {
            // abar maps |m,n> -> coeff_a(m,n)|m+1,n>; its adjoint maps
            // |m+1,n> -> coeff_a(m,n)|m,n>, which is exactly how a acts.
            let mut ok = true;
            for m in 0..sr.cutoff - 1 {
                for n in 0..sr.cutoff {
                    let up = match sr.apply_letter(LAB, (m, n)).unwrap() {
                        WordAction::To(c, t) => (c, t),
                        _ => {
                            ok = false;
                            continue;
                        }
                    };
                    let down = match sr.apply_letter(LA, (m + 1, n)).unwrap() {
                        WordAction::To(c, t) => (c, t),
                        _ => {
                            ok = false;
                            continue;
                        }
                    };
                    ok &= up == (down.0, (m + 1, n)) && down.1 == (m, n);
                    let bup = match sr.apply_letter(LB, (n, m)).unwrap() {
                        WordAction::To(c, t) => (c, t),
                        _ => continue,
                    };
                    let bdown = match sr.apply_letter(LBB, (n, m + 1)).unwrap() {
                        WordAction::To(c, t) => (c, t),
                        _ => continue,
                    };
                    ok &= bup.0 == bdown.0 && bup.1 == (n, m + 1) && bdown.1 == (n, m);
                }
            }
            (ok, "coefficient tables shared bitwise".into())
        },
    );

    rep.check(
        "qrep.norms",
        "every generator coefficient is bounded by one",
        || {
            let mut worst: f64 = 0.0;
            for m in 0..sr.cutoff {
                for n in 0..sr.cutoff {
                    worst = worst
                        .max(sr.t_eig(m, n))
                        .max(sr.coeff_a(m, n))
                        .max(sr.coeff_b(m, n));
                }
            }
            (worst <= 1.0 + 1e-12, format!("max coefficient {}", worst))
        },
    );

    rep.check(
        "qrep.recursions",
        "a_{m,n+-1} = q^{+-2} a_{m,n}, b_{m+-1,n} = q^{+-2} b_{m,n}, b_{m,n} = q^2 a_{2n+1,m}",
        || {
            let mut worst: f64 = 0.0;
            for m in 0..sr.cutoff.min(20) {
                for n in 1..sr.cutoff.min(20) {
                    worst = worst.max((sr.coeff_a(m, n) - q * q * sr.coeff_a(m, n - 1)).abs());
                    worst = worst.max((sr.coeff_b(n, m) - q * q * sr.coeff_b(n - 1, m)).abs());
                }
            }
            for m in 0..sr.cutoff.min(20) {
                for n in 0..sr.cutoff.min(20) {
                    worst = worst.max((sr.coeff_b(m, n) - q * q * sr.coeff_a(2 * n + 1, m)).abs());
                }
            }
            (worst < 1e-12, format!("max recursion defect {:.2e}", worst))
        },
    );

    // Every defining relation, restricted to the interior window.
    for (id, rel) in qsympl::s4_relations() {
        let terms = eval_terms(&rel, q);
        let label = format!("qrep.relation.{}", id);
        rep.check(&label, "relation residual vanishes on the interior", || {
            let mut worst: f64 = 0.0;
            let mut states = 0usize;
            for m in 0..sr.cutoff - 1 {
                for n in 0..sr.cutoff - 1 {
                    match sr.apply_poly(&terms, (m, n)).unwrap() {
                        None => continue,
                        Some(col) => {
                            states += 1;
                            for v in col.values() {
                                worst = worst.max(v.norm());
                            }
                        }
                    }
                }
            }
            (
                worst < tol && states > 0,
                format!("max interior residual {:.2e} over {} states", worst, states),
            )
        });
    }

    rep.check(
        "qrep.trace-t",
        "the partial trace of t matches the truncated geometric closed form",
        || {
            let direct = sr.trace_t();
            let closed = sr.trace_t_closed();
            let d = (direct - closed).abs();
            (
                d < 1e-12 * closed.max(1.0),
                format!(
                    "direct {:.15}, closed {:.15}, limit {:.15}",
                    direct,
                    closed,
                    trace_t_limit(q)
                ),
            )
        },
    );

    rep.check(
        "qrep.rank",
        "the point-representation pairing gives rank 2 and kills generators",
        || {
            let r = tau0(&chern0_terms());
            let want = Scalar::from_int(2);
            let t_only = tau0(&[(Scalar::one(), vec![LT])]);
            let unit = tau0(&[(Scalar::one(), Vec::new())]);
            (
                r.sub(&want).is_zero() && t_only.is_zero() && unit.is_one(),
                format!("tau0(ch0) = {}", r),
            )
        },
    );
}

/// Index-pairing checks: the truncated charge at the default parameters,
/// the geometric tail bound, and the vanishing of the cocycle on the unit.
pub fn pairing_checks(q: f64, cutoff: usize, tol: f64, rep: &mut Report) {
    let tag = format!("qrep.pairing.q{}.n{}", q, cutoff);
    rep.check(&tag, "the truncated index pairing is -1 within tolerance", || {
        let sr = build_sigma(q, cutoff).expect("valid parameters");
        let p = index_pairing(&sr).unwrap();
        let d = (p + 1.0).abs();
        (d < tol, format!("pairing {:.15}, |pairing + 1| = {:.2e}", p, d))
    });
}

pub fn tail_checks(q: f64, rep: &mut Report) {
    rep.check(
        "qrep.pairing.tail",
        "|pairing(N) + 1| <= 2 q^{2N} for N in {10, 20, 40}, up to summation roundoff",
        || {
            let mut ok = true;
            let mut detail = String::new();
            for n in [10usize, 20, 40] {
                let sr = build_sigma(q, n).expect("valid parameters");
                let p = index_pairing(&sr).unwrap();
                // The geometric tail plus a double-precision floor for the
                // N^2-term summation (the exact tail at N = 40 is far below
                // machine epsilon).
                let bound = 2.0 * q.powi(2 * n as i32) + 1e-12;
                ok &= (p + 1.0).abs() <= bound;
                detail.push_str(&format!("N={}: defect {:.2e} <= {:.2e}; ", n, (p + 1.0).abs(), bound));
            }
            (ok, detail)
        },
    );
    rep.check("qrep.pairing.unit", "the cocycle vanishes on the unit", || {
        let sr = build_sigma(q, 10).expect("valid parameters");
        let r = tau1(&sr, &[(Scalar::one(), Vec::new())]).unwrap();
        (r == 0.0, format!("tau1(1) = {}", r))
    });
}

/// A random polynomial in the abstract 4-sphere letters.
fn random_terms(rng: &mut ChaCha8Rng) -> Vec<(Scalar, Vec<usize>)> {
    let nterms = rng.gen_range(1..=3);
    let mut out = Vec::new();
    for _ in 0..nterms {
        let len = rng.gen_range(0..=4);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..5)).collect();
        let mut r = 0i64;
        while r == 0 {
            r = rng.gen_range(-3..=3);
        }
        let k = rng.gen_range(-2..=2);
        out.push((
            Scalar::monomial(crate::scalars::FieldElem::from_int(r), k),
            word,
        ));
    }
    out
}

/// Cross-check the symbolic engine against the representation: on random
/// element pairs, equality decided by rewriting to normal form must agree
/// with numeric equality of the represented operators on the interior.
pub fn numeric_symbolic_oracle(
    qs: &QSphere,
    inst: &QInstanton,
    trials: usize,
    seed: u64,
    rep: &mut Report,
) {
    let q = 0.5;
    let cutoff = 25usize;
    let tol = 1e-10;
    let sr = build_sigma(q, cutoff).expect("oracle parameters");
    let sys = &qs.sys;
    let images: [NCPoly; 5] = [
        inst.t.clone(),
        inst.a.clone(),
        sys.star(&inst.a),
        inst.b.clone(),
        sys.star(&inst.b),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let relations = qsympl::s4_relations();
    let mut mismatches = Vec::new();
    let mut designed_equal = 0usize;
    let mut verdict_equal = 0usize;
    // Words can have length up to 6 after padding with relation factors,
    // so keep a margin of 6 from the cutoff wall.
    let margin = 6usize;
    for trial in 0..trials {
        let x = random_terms(&mut rng);
        let equal_pair = rng.gen_bool(0.5);
        let y = if equal_pair {
            designed_equal += 1;
            // x plus a multiple of a defining relation: symbolically equal.
            let (_, rel) = &relations[rng.gen_range(0..relations.len())];
            let lw: Vec<usize> = (0..rng.gen_range(0..=1)).map(|_| rng.gen_range(0..5)).collect();
            let rw: Vec<usize> = (0..rng.gen_range(0..=1)).map(|_| rng.gen_range(0..5)).collect();
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-2..=2);
            }
            let scale = Scalar::from_int(c);
            let mut y = x.clone();
            for (s, w) in rel {
                let mut word = lw.clone();
                word.extend_from_slice(w);
                word.extend_from_slice(&rw);
                y.push((s.mul(&scale), word));
            }
            y
        } else {
            random_terms(&mut rng)
        };

        // Symbolic verdict: reduce x - y to normal form in the 7-sphere.
        let mut diff = x.clone();
        for (c, w) in &y {
            diff.push((c.neg(), w.clone()));
        }
        let sym_equal = qsympl::substitute(sys, &diff, &images).is_zero();

        // Numeric verdict: compare columns on the interior.
        let xt = eval_terms(&x, q);
        let yt = eval_terms(&y, q);
        let mut worst: f64 = 0.0;
        let mut states = 0usize;
        for m in 0..cutoff - margin {
            for n in 0..cutoff - margin {
                let cx = sr.apply_poly(&xt, (m, n)).unwrap();
                let cy = sr.apply_poly(&yt, (m, n)).unwrap();
                let (cx, cy) = match (cx, cy) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                };
                states += 1;
                let mut keys: Vec<_> = cx.keys().chain(cy.keys()).collect();
                keys.sort();
                keys.dedup();
                for k in keys {
                    let vx = cx.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0));
                    let vy = cy.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0));
                    worst = worst.max((vx - vy).norm());
                }
            }
        }
        let num_equal = worst < tol && states > 0;
        if sym_equal {
            verdict_equal += 1;
        }
        if sym_equal != num_equal {
            mismatches.push(format!(
                "trial {}: symbolic {} numeric {} (residual {:.2e})",
                trial, sym_equal, num_equal, worst
            ));
        }
    }
    rep.check(
        "qrep.oracle",
        "symbolic and numeric equality agree on random element pairs",
        || {
            (
                mismatches.is_empty(),
                format!(
                    "{} trials, {} designed equal, {} symbolically equal; mismatches: {}",
                    trials,
                    designed_equal,
                    verdict_equal,
                    if mismatches.is_empty() {
                        "none".to_string()
                    } else {
                        mismatches.join("; ")
                    }
                ),
            )
        },
    );
}

/// The full representation suite at the default parameters.
pub fn run_suite(seed: u64, rep: &mut Report) {
    sigma_checks(0.5, 40, rep);
    pairing_checks(0.5, 40, 1e-10, rep);
    tail_checks(0.5, rep);
    let qs = qsympl::build_qsphere().expect("q-sphere builds");
    let mut scratch = Report::new();
    let inst = qsympl::build_projection_q(&qs, &mut scratch);
    numeric_symbolic_oracle(&qs, &inst, 100, seed, rep);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_matches_single_vector_cutoff_formula() {
        // One basis vector: the partial trace is exactly q^4.
        let sr = SigmaRep { q: 0.5, cutoff: 1 };
        assert!((sr.trace_t() - 0.5f64.powi(4)).abs() < 1e-15);
    }

    #[test]
    fn parameter_domain_is_enforced() {
        assert!(build_sigma(1.0, 40).is_err());
        assert!(build_sigma(0.0, 40).is_err());
        assert!(build_sigma(0.5, 2).is_err());
        assert!(build_sigma(0.5, 40).is_ok());
    }

    #[test]
    fn t_squared_is_the_squared_eigenvalue_diagonal() {
        let sr = build_sigma(0.5, 8).unwrap();
        for m in 0..8 {
            for n in 0..8 {
                match sr.apply_word(&[LT, LT], (m, n)).unwrap() {
                    WordAction::To(a, t) => {
                        assert_eq!(t, (m, n));
                        assert!((a - sr.t_eig(m, n).powi(2)).abs() < 1e-15);
                    }
                    _ => panic!("t^2 must be diagonal"),
                }
            }
        }
    }
}
