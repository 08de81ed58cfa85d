//! Hochschild/cyclic complex operators and Chern characters of
//! projections.
//!
//! Chains live in the plain complex `C_n = A^{⊗(n+1)}`, stored as linear
//! combinations of tuples of normal-form words.  The boundary operator
//! `b` lowers the degree, the operator `B` raises it.  Three variants of
//! `B` are provided, because the textbook display `B = B₀N` (with or
//! without the `1/(n+1)` factor inside the cyclic antisymmetrizer `N`)
//! satisfies the complex identities only after passing to the quotient by
//! degenerate chains; on the plain complex the corrected operator
//! `(1−λ)B₀N` is the one with `B² = 0` and `bB + Bb = 0`.  The closure of
//! the Chern character `(b+B)(ch₀ + ch₁) = 0` is convention-sensitive the
//! other way around, so `closure_check` evaluates every variant and
//! reports which ones close.

use crate::ncalg::{NCPoly, RewriteSystem, Word};
use crate::ncmatrix::NCMatrix;
use crate::report::Report;
use crate::scalars::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CyclicError {
    #[error("the boundary operator is undefined in degree zero")]
    DegreeZero,
}

/// An element of `C_n = A^{⊗(n+1)}`: a linear combination of
/// `(n+1)`-tuples of normal-form words with `Scalar` coefficients.
#[derive(Clone)]
pub struct Chain {
    pub degree: usize,
    pub sys: Arc<RewriteSystem>,
    pub terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Chain {
    pub fn zero(sys: Arc<RewriteSystem>, degree: usize) -> Chain {
        Chain {
            degree,
            sys,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, tuple: Vec<Word>, c: Scalar) {
        debug_assert_eq!(tuple.len(), self.degree + 1);
        let entry = self.terms.entry(tuple).or_insert_with(Scalar::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    /// Multilinear canonicalization of a tuple of algebra elements: each
    /// slot is normalized by the host system and the tensor product is
    /// expanded into word tuples.
    pub fn from_slots(sys: Arc<RewriteSystem>, slots: &[NCPoly]) -> Chain {
        assert!(!slots.is_empty());
        let mut out = Chain::zero(sys.clone(), slots.len() - 1);
        let mut partial: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for slot in slots {
            let p = sys.nf(slot);
            let mut next = Vec::new();
            for (tuple, c) in &partial {
                for (w, cw) in &p.terms {
                    let mut t = tuple.clone();
                    t.push(w.clone());
                    next.push((t, c.mul(cw)));
                }
            }
            partial = next;
            if partial.is_empty() {
                return out;
            }
        }
        for (tuple, c) in partial {
            out.add_term(tuple, c);
        }
        out
    }

    pub fn add(&self, o: &Chain) -> Chain {
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (t, c) in &o.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Chain {
        let mut out = Chain::zero(self.sys.clone(), self.degree);
        for (t, c) in &self.terms {
            out.terms.insert(t.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, o: &Chain) -> Chain {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Chain {
        let mut out = Chain::zero(self.sys.clone(), self.degree);
        if c.is_zero() {
            return out;
        }
        for (t, k) in &self.terms {
            out.terms.insert(t.clone(), k.mul(c));
        }
        out
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let slots: Vec<String> = t
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        self.sys.word_string(w)
                    }
                })
                .collect();
            write!(f, "({}) [{}]", c, slots.join(" ⊗ "))?;
        }
        Ok(())
    }
}

/// The Hochschild boundary `b(a₀⊗…⊗a_n) = Σ_{j<n} (−1)^j a₀⊗…⊗a_ja_{j+1}⊗…
/// + (−1)ⁿ a_na₀⊗a₁⊗…⊗a_{n−1}`.
pub fn hochschild_b(c: &Chain) -> Result<Chain, CyclicError> {
    let n = c.degree;
    if n == 0 {
        return Err(CyclicError::DegreeZero);
    }
    let sys = &c.sys;
    let mut out = Chain::zero(c.sys.clone(), n - 1);
    for (tuple, coeff) in &c.terms {
        for j in 0..n {
            let sign = if j % 2 == 0 {
                coeff.clone()
            } else {
                coeff.neg()
            };
            let prod = sys.nf(&NCPoly::from_term(tuple[j].concat(&tuple[j + 1]), Scalar::one()));
            for (w, cw) in &prod.terms {
                let mut t: Vec<Word> = Vec::with_capacity(n);
                t.extend_from_slice(&tuple[..j]);
                t.push(w.clone());
                t.extend_from_slice(&tuple[j + 2..]);
                out.add_term(t, sign.mul(cw));
            }
        }
        // Wraparound term.
        let sign = if n % 2 == 0 {
            coeff.clone()
        } else {
            coeff.neg()
        };
        let prod = sys.nf(&NCPoly::from_term(tuple[n].concat(&tuple[0]), Scalar::one()));
        for (w, cw) in &prod.terms {
            let mut t: Vec<Word> = Vec::with_capacity(n);
            t.push(w.clone());
            t.extend_from_slice(&tuple[1..n]);
            out.add_term(t, sign.mul(cw));
        }
    }
    Ok(out)
}

/// The cyclic antisymmetrizer `N(a₀⊗…⊗a_n) = c_n Σ_j (−1)^{nj}
/// a_j⊗…⊗a_n⊗a₀⊗…⊗a_{j−1}`, with `c_n = 1/(n+1)` when `normalized`.
fn cyclic_n(c: &Chain, normalized: bool) -> Chain {
    let n = c.degree;
    let norm = if normalized {
        Scalar::from_ratio(1, (n + 1) as i64)
    } else {
        Scalar::one()
    };
    let mut out = Chain::zero(c.sys.clone(), n);
    for (tuple, coeff) in &c.terms {
        for j in 0..=n {
            let sign = if (n * j) % 2 == 0 {
                coeff.mul(&norm)
            } else {
                coeff.mul(&norm).neg()
            };
            let mut t: Vec<Word> = Vec::with_capacity(n + 1);
            t.extend_from_slice(&tuple[j..]);
            t.extend_from_slice(&tuple[..j]);
            out.add_term(t, sign);
        }
    }
    out
}

/// The extra degeneracy `B₀(a₀⊗…⊗a_n) = 1⊗a₀⊗…⊗a_n`.
fn unit_shift(c: &Chain) -> Chain {
    let mut out = Chain::zero(c.sys.clone(), c.degree + 1);
    for (tuple, coeff) in &c.terms {
        let mut t: Vec<Word> = Vec::with_capacity(c.degree + 2);
        t.push(Word::empty());
        t.extend_from_slice(tuple);
        out.add_term(t, coeff.clone());
    }
    out
}

/// The cyclic permutation `λ(a₀⊗…⊗a_n) = (−1)ⁿ a_n⊗a₀⊗…⊗a_{n−1}`.
fn cyclic_lambda(c: &Chain) -> Chain {
    let n = c.degree;
    let mut out = Chain::zero(c.sys.clone(), n);
    for (tuple, coeff) in &c.terms {
        let sign = if n % 2 == 0 {
            coeff.clone()
        } else {
            coeff.neg()
        };
        let mut t: Vec<Word> = Vec::with_capacity(n + 1);
        t.push(tuple[n].clone());
        t.extend_from_slice(&tuple[..n]);
        out.add_term(t, sign);
    }
    out
}

/// The displayed degree-raising operator `B = B₀N` with the `1/(n+1)`
/// factor inside `N`.
pub fn connes_b(c: &Chain) -> Chain {
    unit_shift(&cyclic_n(c, true))
}

/// `B₀N` without the `1/(n+1)` factor.
pub fn connes_b_plain(c: &Chain) -> Chain {
    unit_shift(&cyclic_n(c, false))
}

/// The corrected operator `(1−λ)B₀N` (no normalization factor): the
/// variant that satisfies `B² = 0` and `bB + Bb = 0` on the plain complex,
/// where degenerate chains are not quotiented away.
pub fn connes_b_corrected(c: &Chain) -> Chain {
    let y = connes_b_plain(c);
    y.sub(&cyclic_lambda(&y))
}

/// Degree-zero Chern character: the matrix trace, as a one-slot chain.
pub fn chern0(p: &NCMatrix) -> Chain {
    Chain::from_slots(p.sys.clone(), &[p.trace()])
}

/// `ch_k(e) = (−1)^k (2k)!/k! Σ (e−½δ)_{i₀i₁} ⊗ e_{i₁i₂} ⊗ … ⊗ e_{i_{2k}i₀}`
/// for k ≥ 1; `ch₀(e) = tr(e)`.
pub fn chern_character(p: &NCMatrix, k: usize) -> Chain {
    assert!(k <= 2, "higher components are out of the cost budget");
    if k == 0 {
        return chern0(p);
    }
    let n = p.rows;
    let sys = p.sys.clone();
    // (−1)^k (2k)!/k!
    let mut num: i64 = 1;
    for j in (k + 1)..=(2 * k) {
        num *= j as i64;
    }
    if k % 2 == 1 {
        num = -num;
    }
    let coeff = Scalar::from_int(num);
    let half = Scalar::from_ratio(1, 2);
    let mut out = Chain::zero(sys.clone(), 2 * k);
    // Iterate over all index tuples (i_0, ..., i_{2k}).
    let slots_len = 2 * k + 1;
    let mut idx = vec![0usize; slots_len];
    loop {
        let mut slots: Vec<NCPoly> = Vec::with_capacity(slots_len);
        let mut zero = false;
        for s in 0..slots_len {
            let row = idx[s];
            let col = idx[(s + 1) % slots_len];
            let mut e = p.at(row, col).clone();
            if s == 0 && row == col {
                e = e.sub(&NCPoly::constant(half.clone()));
            }
            if e.is_zero() {
                zero = true;
                break;
            }
            slots.push(e);
        }
        if !zero {
            out = out.add(&Chain::from_slots(sys.clone(), &slots));
        }
        // Advance the multi-index.
        let mut s = 0;
        loop {
            idx[s] += 1;
            if idx[s] < n {
                break;
            }
            idx[s] = 0;
            s += 1;
            if s == slots_len {
                return out.scale(&coeff);
            }
        }
    }
}

/// Evaluate `b(ch₁) + B(ch₀)` under every implemented `B` convention and
/// report which conventions close the Chern cycle in degree one.
pub fn closure_check(tag: &str, p: &NCMatrix, rep: &mut Report) {
    let ch0 = chern0(p);
    let ch1 = chern_character(p, 1);
    let b_ch1 = hochschild_b(&ch1).expect("ch1 has positive degree");
    let variants: [(&str, fn(&Chain) -> Chain); 3] = [
        ("normalized-antisymmetrizer", connes_b),
        ("plain-antisymmetrizer", connes_b_plain),
        ("cyclic-corrected", connes_b_corrected),
    ];
    let mut closing: Vec<&str> = Vec::new();
    let mut residuals: Vec<String> = Vec::new();
    for (name, op) in variants {
        let r = b_ch1.add(&op(&ch0));
        if r.is_zero() {
            closing.push(name);
        } else {
            residuals.push(format!("{}: {}", name, r));
        }
    }
    rep.check(
        &format!("cyclic.closure.{}", tag),
        "b(ch1) + B(ch0) = 0 under at least one stated B convention",
        || {
            let detail = format!(
                "closing conventions: [{}]; open: [{}]",
                closing.join(", "),
                residuals.join(" | ")
            );
            (!closing.is_empty(), detail)
        },
    );
}

/// A random chain: `terms` tuples of `degree + 1` random short words in the
/// given letters, with small rational coefficients.
fn random_chain(
    sys: &Arc<RewriteSystem>,
    letters: &[u16],
    degree: usize,
    rng: &mut ChaCha8Rng,
) -> Chain {
    let mut out = Chain::zero(sys.clone(), degree);
    let terms = rng.gen_range(1..=2);
    for _ in 0..terms {
        let mut slots: Vec<NCPoly> = Vec::with_capacity(degree + 1);
        for _ in 0..=degree {
            let len = rng.gen_range(0..=2);
            let mut w = Word::empty();
            for _ in 0..len {
                let l = letters[rng.gen_range(0..letters.len())];
                w = w.concat(&Word::one(l));
            }
            let mut num = 0;
            while num == 0 {
                num = rng.gen_range(-3..=3);
            }
            slots.push(NCPoly::from_term(w, Scalar::from_int(num)));
        }
        out = out.add(&Chain::from_slots(sys.clone(), &slots));
    }
    out
}

/// The degree-zero letters of a system (forms excluded: the complex
/// identities below are stated for ungraded algebras).
fn scalar_letters(sys: &RewriteSystem) -> Vec<u16> {
    (0..sys.generators.len() as u16)
        .filter(|&g| sys.generators[g as usize].degree == 0)
        .collect()
}

/// `b² = 0`, `B² = 0` and `bB + Bb = 0` on random chains of degree ≤ 3,
/// with `B = (1−λ)B₀N`.  The displayed `B₀N` (either normalization)
/// satisfies these only after quotienting degenerate chains, which the
/// plain-complex representation does not do; that finding is recorded as
/// its own check.
pub fn operator_identity_checks(
    tag: &str,
    sys: &Arc<RewriteSystem>,
    chains: usize,
    seed: u64,
    rep: &mut Report,
) {
    let letters = scalar_letters(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad_bb = 0usize;
    let mut bad_sq_cb = 0usize;
    let mut bad_anti = 0usize;
    let mut displayed_sq_fails = 0usize;
    for _ in 0..chains {
        let degree = rng.gen_range(1..=3);
        let c = random_chain(sys, &letters, degree, &mut rng);
        // b b = 0 (needs degree >= 2 for the inner result to admit b).
        if degree >= 2 {
            let bb = hochschild_b(&hochschild_b(&c).unwrap()).unwrap();
            if !bb.is_zero() {
                bad_bb += 1;
            }
        }
        let cb = connes_b_corrected(&c);
        if !connes_b_corrected(&cb).is_zero() {
            bad_sq_cb += 1;
        }
        let anti = hochschild_b(&cb)
            .unwrap()
            .add(&connes_b_corrected(&hochschild_b(&c).unwrap()));
        if !anti.is_zero() {
            bad_anti += 1;
        }
        if !connes_b(&connes_b(&c)).is_zero() {
            displayed_sq_fails += 1;
        }
    }
    rep.check(
        &format!("cyclic.identities.{}", tag),
        "b^2 = 0, B^2 = 0, bB + Bb = 0 exactly on random chains (corrected B)",
        || {
            (
                bad_bb == 0 && bad_sq_cb == 0 && bad_anti == 0,
                format!(
                    "{} chains; failures: b^2 {}, B^2 {}, bB+Bb {}",
                    chains, bad_bb, bad_sq_cb, bad_anti
                ),
            )
        },
    );
    rep.check(
        &format!("cyclic.identities.{}.displayed-B", tag),
        "the displayed B0*N operator does not square to zero on the plain complex",
        || {
            (
                displayed_sq_fails > 0,
                format!(
                    "B^2 != 0 on {} of {} random chains (expected: the identity needs the degenerate-chain quotient)",
                    displayed_sq_fails, chains
                ),
            )
        },
    );
}

/// The full cyclic suite over both sphere families: operator identities on
/// random chains, the degree-zero Chern characters in closed form, their
/// self-adjointness, and the (ch₀, ch₁) closure conventions.
pub fn run_suite(seed: u64, rep: &mut Report) {
    use crate::qsympl;
    use crate::theta::{build_theta_spheres, ThetaConfig};

    let ts = build_theta_spheres(&ThetaConfig::from_ratio(1, 3));
    let qs = qsympl::build_qsphere().expect("q-sphere builds");
    let mut scratch = Report::new();
    let inst = qsympl::build_projection_q(&qs, &mut scratch);

    operator_identity_checks("theta-s4", &ts.s4, 200, seed, rep);
    operator_identity_checks("q-s7", &qs.sys, 200, seed.wrapping_add(1), rep);

    let p_theta = ts.projection();
    rep.exact("cyclic.ch0.theta", "ch0 of the toric projection is 2", || {
        let want = Chain::from_slots(
            ts.s4.clone(),
            &[NCPoly::constant(Scalar::from_int(2))],
        );
        let r = chern0(&p_theta).sub(&want);
        if r.is_zero() {
            String::new()
        } else {
            format!("{}", r)
        }
    });

    rep.exact(
        "cyclic.ch0.q",
        "ch0 of the q-projection is 2 - q^-4 (1-q^2)(1-q^4) t",
        || {
            let u = |k: i64| Scalar::unit_pow(k);
            let coeff = u(-4)
                .mul(&Scalar::one().sub(&u(2)))
                .mul(&Scalar::one().sub(&u(4)))
                .neg();
            let want_poly =
                NCPoly::constant(Scalar::from_int(2)).add(&inst.t.scale(&coeff));
            let want = Chain::from_slots(qs.sys.clone(), &[want_poly]);
            let r = chern0(&inst.p).sub(&want);
            if r.is_zero() {
                String::new()
            } else {
                format!("{}", r)
            }
        },
    );

    rep.exact("cyclic.ch0.identity", "ch0 of the identity projection is its size", || {
        let p = NCMatrix::identity(ts.s4.clone(), 5);
        let want = Chain::from_slots(ts.s4.clone(), &[NCPoly::constant(Scalar::from_int(5))]);
        let r = chern0(&p).sub(&want);
        if r.is_zero() {
            String::new()
        } else {
            format!("{}", r)
        }
    });

    rep.exact(
        "cyclic.ch0.self-adjoint",
        "ch0 of each projection is star-fixed",
        || {
            let t_theta = p_theta.trace();
            let t_q = inst.p.trace();
            let r1 = ts.s4.nf(&ts.s4.star(&t_theta).sub(&t_theta));
            let r2 = qs.sys.nf(&qs.sys.star(&t_q).sub(&t_q));
            if r1.is_zero() && r2.is_zero() {
                String::new()
            } else {
                "a degree-zero Chern character is not self-adjoint".into()
            }
        },
    );

    closure_check("theta", &p_theta, rep);
    closure_check("q", &inst.p, rep);

    rep.check(
        "cyclic.ch2.builds",
        "the degree-four Chern character component is computable",
        || {
            let ch2 = chern_character(&inst.p, 2);
            (ch2.degree == 4 && !ch2.is_zero(), format!("{} terms", ch2.terms.len()))
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Generator;
    use crate::scalars::UnitMode;

    fn free_sys() -> Arc<RewriteSystem> {
        let gens = vec![
            Generator {
                name: "x".into(),
                degree: 0,
                weight: (0, 0),
                star_partner: 0,
                form_partner: None,
                hweight: (0, 0),
            },
            Generator {
                name: "y".into(),
                degree: 0,
                weight: (0, 0),
                star_partner: 1,
                form_partner: None,
                hweight: (0, 0),
            },
        ];
        Arc::new(RewriteSystem::new("free", gens, UnitMode::PhaseUnit))
    }

    #[test]
    fn boundary_of_a_two_tensor_is_the_commutator() {
        let sys = free_sys();
        let c = Chain::from_slots(sys.clone(), &[sys.gen_poly("x"), sys.gen_poly("y")]);
        let b = hochschild_b(&c).unwrap();
        let want = Chain::from_slots(sys.clone(), &[sys.mul_nf(&sys.gen_poly("x"), &sys.gen_poly("y"))])
            .sub(&Chain::from_slots(
                sys.clone(),
                &[sys.mul_nf(&sys.gen_poly("y"), &sys.gen_poly("x"))],
            ));
        assert!(b.sub(&want).is_zero());
    }

    #[test]
    fn boundary_of_unit_tensor_unit_vanishes() {
        let sys = free_sys();
        let c = Chain::from_slots(sys.clone(), &[NCPoly::one(), NCPoly::one()]);
        assert!(hochschild_b(&c).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_b_is_rejected() {
        let sys = free_sys();
        let c = Chain::from_slots(sys.clone(), &[sys.gen_poly("x")]);
        assert!(hochschild_b(&c).is_err());
    }

    #[test]
    fn displayed_b_on_degree_zero_prepends_the_unit() {
        let sys = free_sys();
        let c = Chain::from_slots(sys.clone(), &[sys.gen_poly("x")]);
        let b = connes_b(&c);
        let want = Chain::from_slots(sys.clone(), &[NCPoly::one(), sys.gen_poly("x")]);
        assert!(b.sub(&want).is_zero());
    }

    #[test]
    fn identity_projection_chern_closure_is_trivial() {
        let sys = free_sys();
        let p = NCMatrix::identity(sys.clone(), 3);
        // (e - 1/2) commutes with everything, so ch1 collapses.
        let ch1 = chern_character(&p, 1);
        let b = hochschild_b(&ch1).unwrap();
        let b0 = connes_b(&chern0(&p));
        assert!(b.add(&b0).is_zero());
    }
}
