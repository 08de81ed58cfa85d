//! The toric 4-sphere and 7-sphere: phase commutation relations with a full
//! differential calculus, the instanton projection p = Psi Psi^dagger, the
//! twisted Dirac matrices, and the subalgebra embedding of the 4-sphere
//! generators into the 7-sphere.

use crate::ncalg::{antisym, deformation_phase, Generator, NCPoly, RewriteSystem, Word};
use crate::ncmatrix::NCMatrix;
use crate::report::Report;
use crate::scalars::{Scalar, UnitMode};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

/// Deformation parameter and derived data for the toric spheres.
#[derive(Debug, Clone)]
pub struct ThetaConfig {
    pub theta: BigRational,
}

impl ThetaConfig {
    pub fn new(theta: BigRational) -> Self {
        ThetaConfig { theta }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_classical(&self) -> bool {
        self.theta.is_zero()
    }

    /// The evaluation point mu0 = e^(i pi theta) for numeric checks.
    pub fn mu_numeric(&self) -> Complex64 {
        let t = self.theta.numer().to_string().parse::<f64>().unwrap()
            / self.theta.denom().to_string().parse::<f64>().unwrap();
        Complex64::from_polar(1.0, PI * t)
    }
}

/// Antisymmetry matrix (in units of theta) for the 4-sphere torus weights:
/// the phase between weights r, r' is mu^(2 r.M.r').
pub fn theta_hat_s4() -> [[BigRational; 2]; 2] {
    antisym(BigRational::from_integer(1.into()))
}

/// Same for the 7-sphere double-cover torus weights (half the 4-sphere one).
pub fn theta_hat_s7() -> [[BigRational; 2]; 2] {
    antisym(BigRational::new(BigInt::from(1), BigInt::from(2)))
}

struct GenSpec {
    name: &'static str,
    weight: (i64, i64),
    /// Offset of the star partner within the degree-0 block.
    star: usize,
    hweight: (i64, i64),
}

/// Build a quasi-commutation system: degree-0 letters from `base` followed by
/// their degree-1 partners, all pairs swapping with the deformation phase of
/// their torus weights (one-form pairs pick up an extra sign and square to 0).
fn build_quasi_commutation(
    name: &str,
    base: &[GenSpec],
    theta_hat: &[[BigRational; 2]; 2],
) -> RewriteSystem {
    let n = base.len();
    let mut gens = Vec::with_capacity(2 * n);
    for (k, spec) in base.iter().enumerate() {
        gens.push(Generator {
            name: spec.name.to_string(),
            degree: 0,
            weight: spec.weight,
            star_partner: spec.star,
            form_partner: Some(n + k),
            hweight: spec.hweight,
        });
    }
    for spec in base.iter() {
        gens.push(Generator {
            name: format!("d{}", spec.name),
            degree: 1,
            weight: spec.weight,
            star_partner: n + spec.star,
            form_partner: None,
            hweight: spec.hweight,
        });
    }
    let mut sys = RewriteSystem::new(name, gens, UnitMode::PhaseUnit);
    for a in 0..2 * n {
        for b in 0..2 * n {
            let da = sys.generators[a].degree;
            let db = sys.generators[b].degree;
            if a == b {
                if da == 1 {
                    // one-form generators square to zero
                    sys.add_rule(Word(vec![a as u16, a as u16]), NCPoly::zero())
                        .unwrap();
                }
                continue;
            }
            if a < b {
                continue;
            }
            let wa = sys.generators[a].weight;
            let wb = sys.generators[b].weight;
            let mut c = deformation_phase(wa, wb, theta_hat).expect("integral phase");
            if da == 1 && db == 1 {
                c = c.neg();
            }
            let rhs = NCPoly::from_term(Word(vec![b as u16, a as u16]), c);
            sys.add_rule(Word(vec![a as u16, b as u16]), rhs).unwrap();
        }
    }
    sys
}

/// Append the spherical ideal rules: the relation sum of the listed quadratic
/// words = 1 (eliminating its largest normal word) together with its exterior
/// differential, a one-form relation that is not a consequence of the
/// quadratic rule alone.
fn add_sphere_rule(sys: &mut RewriteSystem, words: &[(u16, u16)]) {
    // All listed words are normal (sorted); eliminate the largest.
    let mut ws: Vec<Word> = words.iter().map(|&(a, b)| Word(vec![a, b])).collect();
    ws.sort();
    let top = ws.pop().unwrap();
    let mut rhs = NCPoly::one();
    for w in ws {
        rhs.add_term(w, Scalar::from_int(-1));
    }
    sys.add_ideal_rule(top, rhs).unwrap();

    // d(relation) = 0: eliminate its largest one-form word.
    let mut rel = NCPoly::constant(Scalar::from_int(-1));
    for &(a, b) in words {
        rel.add_term(Word(vec![a, b]), Scalar::one());
    }
    let dr = sys.differential(&rel).unwrap();
    let (w, c) = dr.leading().expect("nonzero differential relation");
    let (w, c) = (w.clone(), c.clone());
    let cinv = c.monomial_inv().expect("monomial leading coefficient");
    let rest = dr.sub(&NCPoly::from_term(w.clone(), c));
    sys.add_ideal_rule(w, rest.neg().scale(&cinv)).unwrap();
}

/// The two toric sphere systems plus embedding and instanton data builders.
#[derive(Clone)]
pub struct ThetaSpheres {
    pub cfg: ThetaConfig,
    pub s4: Arc<RewriteSystem>,
    pub s7: Arc<RewriteSystem>,
}

pub fn build_theta_spheres(cfg: &ThetaConfig) -> ThetaSpheres {
    // 4-sphere: z0 self-adjoint, z1, z2 and conjugates.
    // Conjugate pairs are adjacent in the order so the spherical ideal rule
    // (eliminating the top pair) meets every sorted word containing it.
    let s4_base = [
        GenSpec { name: "z0", weight: (0, 0), star: 0, hweight: (0, 0) },
        GenSpec { name: "z1", weight: (1, 0), star: 2, hweight: (2, 0) },
        GenSpec { name: "z1*", weight: (-1, 0), star: 1, hweight: (-2, 0) },
        GenSpec { name: "z2", weight: (0, 1), star: 4, hweight: (0, 2) },
        GenSpec { name: "z2*", weight: (0, -1), star: 3, hweight: (0, -2) },
    ];
    let mut s4 = build_quasi_commutation("s4_theta", &s4_base, &theta_hat_s4());
    // z0 z0 + z1 z1* + z2 z2* = 1 (conjugate pairs commute)
    add_sphere_rule(&mut s4, &[(0, 0), (1, 2), (3, 4)]);

    // 7-sphere: psi_1..4 and conjugates, double-cover torus weights.
    let s7_base = [
        GenSpec { name: "p1", weight: (1, 0), star: 1, hweight: (1, -1) },
        GenSpec { name: "p1*", weight: (-1, 0), star: 0, hweight: (-1, 1) },
        GenSpec { name: "p2", weight: (-1, 0), star: 3, hweight: (-1, 1) },
        GenSpec { name: "p2*", weight: (1, 0), star: 2, hweight: (1, -1) },
        GenSpec { name: "p3", weight: (0, -1), star: 5, hweight: (-1, -1) },
        GenSpec { name: "p3*", weight: (0, 1), star: 4, hweight: (1, 1) },
        GenSpec { name: "p4", weight: (0, 1), star: 7, hweight: (1, 1) },
        GenSpec { name: "p4*", weight: (0, -1), star: 6, hweight: (-1, -1) },
    ];
    let mut s7 = build_quasi_commutation("s7_theta", &s7_base, &theta_hat_s7());
    add_sphere_rule(&mut s7, &[(0, 1), (2, 3), (4, 5), (6, 7)]);

    // The differential ideal needs the overlap consequences of the one-form
    // relation to present the quotient calculus confluently.
    s4.saturate_overlaps(10).expect("s4 saturation");
    s7.saturate_overlaps(10).expect("s7 saturation");

    let (s4, s7) = if cfg.is_classical() {
        (s4.specialize_unit_one(), s7.specialize_unit_one())
    } else {
        (s4, s7)
    };
    ThetaSpheres {
        cfg: cfg.clone(),
        s4: Arc::new(s4),
        s7: Arc::new(s7),
    }
}

impl ThetaSpheres {
    /// mu as a scalar in the working coefficient ring (1 when classical).
    fn mu(&self) -> Scalar {
        if self.cfg.is_classical() {
            Scalar::one()
        } else {
            Scalar::unit_pow(1)
        }
    }

    fn mu_bar(&self) -> Scalar {
        if self.cfg.is_classical() {
            Scalar::one()
        } else {
            Scalar::unit_pow(-1)
        }
    }

    /// Images of the 4-sphere generators inside the 7-sphere algebra.
    pub fn embed_z(&self, mu_idx: usize) -> NCPoly {
        let g = |n: &str| self.s7.gen_poly(n);
        let two = Scalar::from_int(2);
        let img = match mu_idx {
            // z0 = p1* p1 + p2* p2 - p3* p3 - p4* p4
            0 => g("p1*")
                .mul(&g("p1"))
                .add(&g("p2*").mul(&g("p2")))
                .sub(&g("p3*").mul(&g("p3")))
                .sub(&g("p4*").mul(&g("p4"))),
            // z1 = 2 (mu p3* p1 + p2* p4)
            1 => g("p3*")
                .mul(&g("p1"))
                .scale(&self.mu())
                .add(&g("p2*").mul(&g("p4")))
                .scale(&two),
            // z2 = 2 (-p1* p4 + mu_bar p3* p2)
            2 => g("p1*")
                .mul(&g("p4"))
                .neg()
                .add(&g("p3*").mul(&g("p2")).scale(&self.mu_bar()))
                .scale(&two),
            _ => panic!("z index"),
        };
        self.s7.nf(&img)
    }

    /// Algebra map from the 4-sphere system into the 7-sphere system.
    pub fn embed_poly(&self, p: &NCPoly) -> NCPoly {
        let mut images: HashMap<u16, NCPoly> = HashMap::new();
        let z0 = self.embed_z(0);
        let z1 = self.embed_z(1);
        let z2 = self.embed_z(2);
        images.insert(self.s4.gen_index("z0").unwrap(), z0);
        images.insert(self.s4.gen_index("z1").unwrap(), z1);
        images.insert(self.s4.gen_index("z2").unwrap(), z2);
        for name in ["z1*", "z2*"] {
            let base = name.trim_end_matches('*');
            let img = self.s7.star(&images[&self.s4.gen_index(base).unwrap()]);
            images.insert(self.s4.gen_index(name).unwrap(), img);
        }
        for name in ["z0", "z1", "z2", "z1*", "z2*"] {
            let img = self
                .s7
                .differential(&images[&self.s4.gen_index(name).unwrap()])
                .unwrap();
            images.insert(self.s4.gen_index(&format!("d{}", name)).unwrap(), img);
        }
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let mut acc = NCPoly::constant(c.clone());
            for &l in &w.0 {
                acc = acc.mul(&images[&l]);
            }
            out = out.add(&self.s7.nf(&acc));
        }
        self.s7.nf(&out)
    }

    /// Embed a matrix over the 4-sphere system into the 7-sphere system.
    pub fn embed_matrix(&self, m: &NCMatrix) -> NCMatrix {
        NCMatrix::from_fn(self.s7.clone(), m.rows, m.cols, |i, j| {
            self.embed_poly(m.at(i, j))
        })
    }

    /// The twisted Dirac matrices gamma_0, gamma_1, gamma_2 over `sys`.
    pub fn gamma(&self, sys: &Arc<RewriteSystem>, mu_idx: usize) -> NCMatrix {
        let mut m = NCMatrix::zero(sys.clone(), 4, 4);
        let c = |s: Scalar| NCPoly::constant(s);
        match mu_idx {
            0 => {
                *m.at_mut(0, 0) = c(Scalar::from_int(1));
                *m.at_mut(1, 1) = c(Scalar::from_int(1));
                *m.at_mut(2, 2) = c(Scalar::from_int(-1));
                *m.at_mut(3, 3) = c(Scalar::from_int(-1));
            }
            1 => {
                *m.at_mut(1, 3) = c(Scalar::from_int(2));
                *m.at_mut(2, 0) = c(Scalar::from_int(2).mul(&self.mu()));
            }
            2 => {
                *m.at_mut(0, 3) = c(Scalar::from_int(-2));
                *m.at_mut(2, 1) = c(Scalar::from_int(2).mul(&self.mu_bar()));
            }
            _ => panic!("gamma index"),
        }
        m
    }

    /// The five vertex matrices paired with (z0, z1, z2, z1*, z2*):
    /// gamma_0, gamma_1, gamma_2, gamma_1^dagger, gamma_2^dagger.
    pub fn gamma_family(&self, sys: &Arc<RewriteSystem>) -> Vec<NCMatrix> {
        let g0 = self.gamma(sys, 0);
        let g1 = self.gamma(sys, 1);
        let g2 = self.gamma(sys, 2);
        let g1s = g1.dagger();
        let g2s = g2.dagger();
        vec![g0, g1, g2, g1s, g2s]
    }

    /// The five 4-sphere coordinates as polynomials in their own system.
    pub fn z_family(&self) -> Vec<NCPoly> {
        ["z0", "z1", "z2", "z1*", "z2*"]
            .iter()
            .map(|n| self.s4.gen_poly(n))
            .collect()
    }

    pub fn verify_systems(&self, rep: &mut Report) {
        for (tag, sys) in [("s4", &self.s4), ("s7", &self.s7)] {
            let r = sys.check_overlaps();
            rep.check(
                &format!("theta.{}.confluence", tag),
                "all rewrite-rule overlaps resolve (diamond lemma)",
                || (r.resolved(), format!("{}", r)),
            );
            let r2 = sys.without_ideal().check_overlaps();
            rep.check(
                &format!("theta.{}.confluence_no_ideal", tag),
                "overlaps resolve without the spherical ideal rule",
                || (r2.resolved(), format!("{}", r2)),
            );
        }
        // Phase reconstruction: the swap coefficient of each generator pair
        // equals the deformation phase of their torus weights.
        rep.exact(
            "theta.s7.phase_reconstruction",
            "swap coefficient psi_a psi_b -> c psi_b psi_a equals the weight deformation phase",
            || {
                if self.cfg.is_classical() {
                    return String::new();
                }
                let th = theta_hat_s7();
                for a in 0..8u16 {
                    for b in 0..a {
                        let lhs = NCPoly::from_term(Word(vec![a, b]), Scalar::one());
                        let n = self.s7.nf(&lhs);
                        let (w, c) = n.terms.iter().next().unwrap();
                        if w.0 != vec![b, a] {
                            // ideal rule rewrote the pair; skip it here
                            continue;
                        }
                        let expect = deformation_phase(
                            self.s7.generators[a as usize].weight,
                            self.s7.generators[b as usize].weight,
                            &th,
                        )
                        .unwrap();
                        if *c != expect {
                            return format!("pair ({},{}) phase {} vs {}", a, b, c, expect);
                        }
                    }
                }
                String::new()
            },
        );
    }

    /// Substitute the embedding into every 4-sphere relation and check the
    /// results vanish in the 7-sphere; also the Dirac-matrix form of the
    /// embedding and the torus weights through the double cover.
    pub fn verify_subalgebra(&self, rep: &mut Report) {
        // All defining relations of the 4-sphere (pre-quotient rules plus the
        // spherical relation).
        let pre = self.s4.without_ideal();
        for (k, rule) in pre.rules.iter().enumerate() {
            let rel = NCPoly::from_term(rule.lhs.clone(), Scalar::one()).sub(&rule.rhs);
            let img = self.embed_poly(&rel);
            rep.exact(
                &format!("theta.subalgebra.relation_{}", k),
                &format!(
                    "embedding preserves relation {} -> {}",
                    pre.word_string(&rule.lhs),
                    pre.poly_string(&rule.rhs)
                ),
                || {
                    if img.is_zero() {
                        String::new()
                    } else {
                        self.s7.poly_string(&img)
                    }
                },
            );
        }
        // Spherical relation z1* z1 + z2* z2 + z0^2 = 1.
        rep.exact(
            "theta.subalgebra.sphere",
            "z1* z1 + z2* z2 + z0^2 = 1 under the embedding",
            || {
                let p = self
                    .s4
                    .parse_poly("z1* z1 + z2* z2 + z0 z0 - (1)")
                    .unwrap();
                let img = self.embed_poly(&p);
                if img.is_zero() {
                    String::new()
                } else {
                    self.s7.poly_string(&img)
                }
            },
        );
        // z0 centrality.
        for g in ["z1", "z2", "z1*", "z2*"] {
            rep.exact(
                &format!("theta.subalgebra.z0_central_{}", g),
                "z0 commutes with every generator under the embedding",
                || {
                    let p = self
                        .s4
                        .parse_poly(&format!("z0 {} - {} z0", g, g))
                        .unwrap();
                    let img = self.embed_poly(&p);
                    if img.is_zero() {
                        String::new()
                    } else {
                        self.s7.poly_string(&img)
                    }
                },
            );
        }
        // z_mu = sum_ab psi_a* (gamma_mu)_ab psi_b.
        let psis = psi_column_vector(&self.s7);
        for mu in 0..3 {
            let gm = self.gamma(&self.s7, mu);
            let quad = psis.dagger().mm(&gm).mm(&psis);
            let z = self.embed_z(mu);
            rep.exact(
                &format!("theta.subalgebra.dirac_form_z{}", mu),
                "z_mu equals psi^dagger gamma_mu psi",
                || {
                    let d = quad.at(0, 0).sub(&z);
                    let d = self.s7.nf(&d);
                    if d.is_zero() {
                        String::new()
                    } else {
                        self.s7.poly_string(&d)
                    }
                },
            );
        }
        // Torus weight of each embedded generator matches the double cover
        // pullback (s1, s2) -> (s1 + s2, -s1 + s2).
        rep.exact(
            "theta.subalgebra.weights",
            "embedded z_mu are weight-homogeneous with the double-cover pullback weights",
            || {
                for (mu, w4) in [(0usize, (0i64, 0i64)), (1, (1, 0)), (2, (0, 1))] {
                    let img = self.embed_z(mu);
                    let expect = (w4.0 - w4.1, w4.0 + w4.1);
                    for w in img.terms.keys() {
                        if self.s7.weight(w) != expect {
                            return format!(
                                "z{} term {} has weight {:?}, expected {:?}",
                                mu,
                                self.s7.word_string(w),
                                self.s7.weight(w),
                                expect
                            );
                        }
                    }
                }
                String::new()
            },
        );
    }

    pub fn verify_clifford(&self, rep: &mut Report) {
        let sys = &self.s4;
        let lam = |mu: usize, nu: usize| -> Scalar {
            if self.cfg.is_classical() {
                return Scalar::one();
            }
            match (mu, nu) {
                (1, 2) => Scalar::unit_pow(2),
                (2, 1) => Scalar::unit_pow(-2),
                _ => Scalar::one(),
            }
        };
        let g = [self.gamma(sys, 0), self.gamma(sys, 1), self.gamma(sys, 2)];
        for mu in 1..3 {
            for nu in 1..3 {
                let a = g[mu]
                    .mm(&g[nu])
                    .add(&g[nu].mm(&g[mu]).scale(&lam(mu, nu)));
                rep.exact(
                    &format!("theta.clifford.gg_{}{}", mu, nu),
                    "gamma_mu gamma_nu + lambda_munu gamma_nu gamma_mu = 0",
                    || {
                        if a.is_zero() {
                            String::new()
                        } else {
                            a.pretty()
                        }
                    },
                );
                let b = g[mu]
                    .mm(&g[nu].dagger())
                    .add(&g[nu].dagger().mm(&g[mu]).scale(&lam(nu, mu)));
                let expect = if mu == nu {
                    NCMatrix::identity(sys.clone(), 4).scale(&Scalar::from_int(4))
                } else {
                    NCMatrix::zero(sys.clone(), 4, 4)
                };
                rep.exact(
                    &format!("theta.clifford.ggstar_{}{}", mu, nu),
                    "gamma_mu gamma_nu* + lambda_numu gamma_nu* gamma_mu = 4 delta_munu",
                    || {
                        let d = b.sub(&expect);
                        if d.is_zero() {
                            String::new()
                        } else {
                            d.pretty()
                        }
                    },
                );
            }
        }
        rep.exact(
            "theta.clifford.grading",
            "gamma_0 = -1/16 [gamma_1, gamma_1*] [gamma_2, gamma_2*]",
            || {
                let comm = |a: &NCMatrix, b: &NCMatrix| a.mm(b).sub(&b.mm(a));
                let lhs = comm(&g[1], &g[1].dagger())
                    .mm(&comm(&g[2], &g[2].dagger()))
                    .scale(&Scalar::from_ratio(-1, 16));
                let d = lhs.sub(&g[0]);
                if d.is_zero() {
                    String::new()
                } else {
                    d.pretty()
                }
            },
        );
    }

    /// The 4x2 matrix Psi over the 7-sphere system.
    pub fn psi(&self) -> NCMatrix {
        let g = |n: &str| self.s7.gen_poly(n);
        NCMatrix::from_fn(self.s7.clone(), 4, 2, |i, j| match (i, j) {
            (0, 0) => g("p1"),
            (0, 1) => g("p2*").neg(),
            (1, 0) => g("p2"),
            (1, 1) => g("p1*"),
            (2, 0) => g("p3"),
            (2, 1) => g("p4*").neg(),
            (3, 0) => g("p4"),
            (3, 1) => g("p3*"),
            _ => unreachable!(),
        })
    }

    /// The instanton projection over the 4-sphere system (explicit display).
    pub fn projection(&self) -> NCMatrix {
        let g = |n: &str| self.s4.gen_poly(n);
        let half = Scalar::from_ratio(1, 2);
        let mu = self.mu();
        let mub = self.mu_bar();
        let one = NCPoly::one();
        NCMatrix::from_fn(self.s4.clone(), 4, 4, |i, j| {
            let e = match (i, j) {
                (0, 0) => one.add(&g("z0")),
                (1, 1) => one.add(&g("z0")),
                (2, 2) => one.sub(&g("z0")),
                (3, 3) => one.sub(&g("z0")),
                (0, 2) => g("z1"),
                (0, 3) => g("z2*").scale(&mub).neg(),
                (1, 2) => g("z2"),
                (1, 3) => g("z1*").scale(&mu),
                (2, 0) => g("z1*"),
                (2, 1) => g("z2*"),
                (3, 0) => g("z2").scale(&mu).neg(),
                (3, 1) => g("z1").scale(&mub),
                _ => NCPoly::zero(),
            };
            e.scale(&half)
        })
    }
}

/// Psi as a 4x2 matrix is also needed as a plain matrix; helper building the
/// column matrix of the psi generators for the Dirac-form identities.
fn psi_column_vector(s7: &Arc<RewriteSystem>) -> NCMatrix {
    NCMatrix::from_fn(s7.clone(), 4, 1, |i, _| {
        s7.gen_poly(["p1", "p2", "p3", "p4"][i])
    })
}

/// Instanton data: Psi, the projection, the gauge potential and curvature.
pub struct InstantonData {
    pub psi: NCMatrix,
    /// Projection over the 4-sphere system.
    pub p: NCMatrix,
    /// Gauge potential omega = Psi^dagger d Psi (7-sphere, 2x2 one-forms).
    pub omega: NCMatrix,
    /// Curvature F0 = p dp dp over the 4-sphere system (4x4 two-forms).
    pub f0: NCMatrix,
}

pub fn build_instanton(ts: &ThetaSpheres, rep: &mut Report) -> InstantonData {
    let psi = ts.psi();
    let p4 = ts.projection();

    rep.exact("theta.instanton.psi_unitary", "Psi^dagger Psi = I_2", || {
        let d = psi
            .dagger()
            .mm(&psi)
            .sub(&NCMatrix::identity(ts.s7.clone(), 2));
        if d.is_zero() {
            String::new()
        } else {
            d.pretty()
        }
    });

    rep.exact(
        "theta.instanton.p_display",
        "Psi Psi^dagger equals the explicit projection display entrywise",
        || {
            let p7 = psi.mm(&psi.dagger());
            let d = p7.sub(&ts.embed_matrix(&p4));
            if d.is_zero() {
                String::new()
            } else {
                d.pretty()
            }
        },
    );

    rep.exact("theta.instanton.projection", "p^2 = p = p^dagger", || {
        match p4.check_projection() {
            Ok(()) => String::new(),
            Err(e) => format!("{}", e),
        }
    });

    let omega = psi.dagger().mm(&psi.d().unwrap());

    rep.exact("theta.instanton.omega_traceless", "tr(omega) = 0", || {
        let t = omega.trace();
        if t.is_zero() {
            String::new()
        } else {
            ts.s7.poly_string(&t)
        }
    });

    rep.exact(
        "theta.instanton.omega_skew",
        "omega^dagger = -omega (skew-hermitian gauge potential)",
        || {
            let d = omega.dagger().add(&omega);
            if d.is_zero() {
                String::new()
            } else {
                d.pretty()
            }
        },
    );

    rep.exact(
        "theta.instanton.omega_invariant_weights",
        "omega entries are torus-weight zero (hence central one-forms)",
        || {
            for i in 0..2 {
                for j in 0..2 {
                    for w in omega.at(i, j).terms.keys() {
                        if ts.s7.weight(w) != (0, 0) {
                            return format!("entry ({},{}) word {}", i, j, ts.s7.word_string(w));
                        }
                    }
                }
            }
            String::new()
        },
    );

    let f0 = p4.grassmann_curvature().unwrap();

    rep.exact("theta.instanton.f0_pinned", "p F0 = F0 p = F0", || {
        let a = p4.mm(&f0).sub(&f0);
        let b = f0.mm(&p4).sub(&f0);
        if a.is_zero() && b.is_zero() {
            String::new()
        } else {
            format!("{}\n{}", a.pretty(), b.pretty())
        }
    });

    rep.exact(
        "theta.instanton.curvature_compat",
        "Psi (d omega + omega^2) Psi^dagger = p dp dp under the embedding",
        || {
            let f_omega = omega.d().unwrap().add(&omega.mm(&omega));
            let lhs = psi.mm(&f_omega).mm(&psi.dagger());
            let rhs = ts.embed_matrix(&f0);
            let d = lhs.sub(&rhs);
            if d.is_zero() {
                String::new()
            } else {
                d.pretty()
            }
        },
    );

    rep.exact(
        "theta.instanton.hermitian_columns",
        "columns of Psi are orthonormal for the Hermitian pairing",
        || {
            for a in 0..2 {
                for b in 0..2 {
                    let pair = NCMatrix::pairing(&psi.column(a), &psi.column(b));
                    let expect = if a == b { NCPoly::one() } else { NCPoly::zero() };
                    let d = ts.s7.nf(&pair.sub(&expect));
                    if !d.is_zero() {
                        return format!("<col{},col{}> = {}", a, b, ts.s7.poly_string(&pair));
                    }
                }
            }
            String::new()
        },
    );

    rep.exact(
        "theta.instanton.p_weights",
        "projection entries are weight-homogeneous with the expected torus weights",
        || {
            let expect = [
                [(0, 0), (0, 0), (1, 0), (0, -1)],
                [(0, 0), (0, 0), (0, 1), (-1, 0)],
                [(-1, 0), (0, -1), (0, 0), (0, 0)],
                [(0, 1), (1, 0), (0, 0), (0, 0)],
            ];
            for i in 0..4 {
                for j in 0..4 {
                    for w in p4.at(i, j).terms.keys() {
                        if w.is_empty() {
                            continue;
                        }
                        if ts.s4.weight(w) != expect[i][j] {
                            return format!(
                                "entry ({},{}) word {} weight {:?}",
                                i,
                                j,
                                ts.s4.word_string(w),
                                ts.s4.weight(w)
                            );
                        }
                    }
                }
            }
            String::new()
        },
    );

    InstantonData {
        psi,
        p: p4,
        omega,
        f0,
    }
}

/// Numeric gauge-action check: under Psi -> Psi w for a constant numeric
/// special unitary w, the projection's coefficient table is unchanged and the
/// gauge potential transforms as omega -> w^dagger omega w (w is constant,
/// so the inhomogeneous term w^dagger dw vanishes).
pub fn su2_action_check(ts: &ThetaSpheres, data: &InstantonData, w: [[Complex64; 2]; 2], rep: &mut Report) {
    let wd = [
        [w[0][0].conj(), w[1][0].conj()],
        [w[0][1].conj(), w[1][1].conj()],
    ];
    // unitarity of w
    let mut unitary_err: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                acc += wd[i][k] * w[k][j];
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            unitary_err = unitary_err.max((acc - expect).norm());
        }
    }
    rep.check("theta.su2.unitary", "w^dagger w = I_2", || {
        (unitary_err < 1e-12, format!("{:.3e}", unitary_err))
    });

    let mu0 = ts.cfg.mu_numeric();
    let eval_table = |p: &NCPoly| -> HashMap<Word, Complex64> {
        let mut m = HashMap::new();
        for (word, c) in &p.terms {
            m.insert(word.clone(), c.eval(mu0, UnitMode::PhaseUnit).unwrap());
        }
        m
    };

    // Precompute normalized blocks B[(i,c),(j,d)] = nf(Psi_ic * star(Psi_jd)).
    let psi = &data.psi;
    let p7 = psi.mm(&psi.dagger());
    let mut max_err: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc: HashMap<Word, Complex64> = HashMap::new();
            for k in 0..2 {
                for c in 0..2 {
                    for dd in 0..2 {
                        let coeff = w[c][k] * w[dd][k].conj();
                        let block = ts
                            .s7
                            .nf(&psi.at(i, c).mul(&ts.s7.star(psi.at(j, dd))));
                        for (word, val) in eval_table(&block) {
                            *acc.entry(word).or_insert(Complex64::new(0.0, 0.0)) += coeff * val;
                        }
                    }
                }
            }
            let base = eval_table(p7.at(i, j));
            let mut words: Vec<Word> = acc.keys().chain(base.keys()).cloned().collect();
            words.sort();
            words.dedup();
            for word in words {
                let a = acc.get(&word).copied().unwrap_or_default();
                let b = base.get(&word).copied().unwrap_or_default();
                max_err = max_err.max((a - b).norm());
            }
        }
    }
    rep.check(
        "theta.su2.p_invariant",
        "(Psi w)(Psi w)^dagger has the same coefficient table as Psi Psi^dagger",
        || (max_err < 1e-12, format!("{:.3e}", max_err)),
    );

    // Gauge potential: (Psi w)^dagger d(Psi w) = w^dagger omega w.
    let mut max_err2: f64 = 0.0;
    for k in 0..2 {
        for l in 0..2 {
            let mut acc: HashMap<Word, Complex64> = HashMap::new();
            for c in 0..2 {
                for dd in 0..2 {
                    let coeff = w[c][k].conj() * w[dd][l];
                    let mut block = NCPoly::zero();
                    for a in 0..4 {
                        block = block.add(
                            &ts.s7
                                .star(psi.at(a, c))
                                .mul(&ts.s7.differential(psi.at(a, dd)).unwrap()),
                        );
                    }
                    let block = ts.s7.nf(&block);
                    for (word, val) in eval_table(&block) {
                        *acc.entry(word).or_insert(Complex64::new(0.0, 0.0)) += coeff * val;
                    }
                }
            }
            // compare to w^dagger omega w assembled from the symbolic omega
            let mut expect: HashMap<Word, Complex64> = HashMap::new();
            for c in 0..2 {
                for dd in 0..2 {
                    let coeff = wd[k][c] * w[dd][l];
                    for (word, val) in eval_table(data.omega.at(c, dd)) {
                        *expect.entry(word).or_insert(Complex64::new(0.0, 0.0)) += coeff * val;
                    }
                }
            }
            let mut words: Vec<Word> = acc.keys().chain(expect.keys()).cloned().collect();
            words.sort();
            words.dedup();
            for word in words {
                let a = acc.get(&word).copied().unwrap_or_default();
                let b = expect.get(&word).copied().unwrap_or_default();
                max_err2 = max_err2.max((a - b).norm());
            }
        }
    }
    rep.check(
        "theta.su2.omega_transform",
        "(Psi w)^dagger d(Psi w) = w^dagger omega w for constant w",
        || (max_err2 < 1e-12, format!("{:.3e}", max_err2)),
    );
}
