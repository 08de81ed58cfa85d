//! Free *-algebra with ordered generators and quasi-commutation rewriting.
//!
//! Features:
//! - words over ordered generators, graded-lexicographic order
//! - rewrite rules (strictly order-decreasing) with a step budget
//! - optional ideal rules eliminating a sphere-relation leading word
//! - diamond-lemma overlap checking (confluence is checked, never completed)
//! - graded star anti-automorphism and exterior differential
//! - torus-weight bookkeeping and deformation phases

use crate::scalars::{parse_scalar, Scalar, ScalarError, UnitMode};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgError {
    #[error("step budget exceeded in normal_form ({0} steps)")]
    StepBudgetExceeded(usize),
    #[error("degree-0 generator '{0}' has no degree-1 partner")]
    MissingFormGenerator(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("rewrite rule right-hand side is not smaller than '{0}'")]
    RuleNotDecreasing(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A generator of the free *-algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// 0 for functions, 1 for one-form generators.
    pub degree: u8,
    /// Torus weight.
    pub weight: (i64, i64),
    /// Index of the adjoint generator (an involution; self index if self-adjoint).
    pub star_partner: usize,
    /// Degree-1 partner of a degree-0 generator, if the calculus has one.
    pub form_partner: Option<usize>,
    /// Doubled Cartan eigenvalues (2*H1, 2*H2); used by twisted symmetries.
    pub hweight: (i64, i64),
}

/// A word in generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn one(g: u16) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded-lexicographic order: by length first, then lexicographically.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A finite linear combination of words with Scalar coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    pub terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        NCPoly::from_term(Word::empty(), Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        NCPoly::from_term(Word::empty(), c)
    }

    pub fn gen(g: u16) -> Self {
        NCPoly::from_term(Word::one(g), Scalar::one())
    }

    pub fn from_term(w: Word, c: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&w).unwrap_or_else(Scalar::zero);
        let s = cur.add(&c);
        if !s.is_zero() {
            self.terms.insert(w, s);
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        self.add(&o.neg())
    }

    /// Free product (word concatenation); no rewriting is applied.
    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                out.add_term(wa.concat(wb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, cw) in &self.terms {
            out.add_term(w.clone(), cw.mul(c));
        }
        out
    }

    /// Substitute u := 1 in every coefficient.
    pub fn specialize_unit_one(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.specialize_unit_one());
        }
        out
    }

    /// Leading (largest) word, if nonzero.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }
}

/// A rewrite rule lhs -> rhs; every rhs word is strictly smaller than lhs.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// Ordered generators plus rewrite rules; provides normal forms, the star
/// operation and the differential for the presented quotient algebra.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub name: String,
    pub generators: Vec<Generator>,
    pub rules: Vec<RewriteRule>,
    /// Sphere-relation eliminations; applied together with `rules`.
    pub ideal_rules: Vec<RewriteRule>,
    pub unit_mode: UnitMode,
    pub step_budget: usize,
    /// Lookup from lhs letters to rule (index into rules then ideal_rules).
    lookup: HashMap<Vec<u16>, usize>,
    max_lhs: usize,
    /// When true, ideal rules participate in normal forms.
    pub use_ideal: bool,
}

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Process-wide default rewriting budget for newly built systems, so a
/// harness can tighten or relax it without threading a parameter through
/// every constructor.
static DEFAULT_BUDGET: std::sync::atomic::AtomicUsize =
    std::sync::atomic::AtomicUsize::new(DEFAULT_STEP_BUDGET);

pub fn set_default_step_budget(n: usize) {
    DEFAULT_BUDGET.store(n.max(1), std::sync::atomic::Ordering::SeqCst);
}

pub fn default_step_budget() -> usize {
    DEFAULT_BUDGET.load(std::sync::atomic::Ordering::SeqCst)
}

impl RewriteSystem {
    pub fn new(
        name: &str,
        generators: Vec<Generator>,
        unit_mode: UnitMode,
    ) -> Self {
        RewriteSystem {
            name: name.to_string(),
            generators,
            rules: Vec::new(),
            ideal_rules: Vec::new(),
            unit_mode,
            step_budget: default_step_budget(),
            lookup: HashMap::new(),
            max_lhs: 0,
            use_ideal: true,
        }
    }

    pub fn gen_index(&self, name: &str) -> Result<u16, AlgError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u16)
            .ok_or_else(|| AlgError::UnknownGenerator(name.to_string()))
    }

    pub fn gen_poly(&self, name: &str) -> NCPoly {
        NCPoly::gen(self.gen_index(name).expect("generator"))
    }

    pub fn add_rule(&mut self, lhs: Word, rhs: NCPoly) -> Result<(), AlgError> {
        self.push_rule(lhs, rhs, false)
    }

    pub fn add_ideal_rule(&mut self, lhs: Word, rhs: NCPoly) -> Result<(), AlgError> {
        self.push_rule(lhs, rhs, true)
    }

    fn push_rule(&mut self, lhs: Word, rhs: NCPoly, ideal: bool) -> Result<(), AlgError> {
        for w in rhs.terms.keys() {
            if *w >= lhs {
                return Err(AlgError::RuleNotDecreasing(self.word_string(&lhs)));
            }
        }
        let rule = RewriteRule { lhs, rhs };
        if ideal {
            self.ideal_rules.push(rule);
        } else {
            self.rules.push(rule);
        }
        self.rebuild_lookup();
        Ok(())
    }

    fn rebuild_lookup(&mut self) {
        self.lookup.clear();
        self.max_lhs = 0;
        for (k, r) in self.rules.iter().enumerate() {
            self.lookup.insert(r.lhs.0.clone(), k);
            self.max_lhs = self.max_lhs.max(r.lhs.len());
        }
        if self.use_ideal {
            for (k, r) in self.ideal_rules.iter().enumerate() {
                self.lookup.insert(r.lhs.0.clone(), self.rules.len() + k);
                self.max_lhs = self.max_lhs.max(r.lhs.len());
            }
        }
    }

    fn rule_at(&self, idx: usize) -> &RewriteRule {
        if idx < self.rules.len() {
            &self.rules[idx]
        } else {
            &self.ideal_rules[idx - self.rules.len()]
        }
    }

    /// A copy of the system with ideal rules disabled (pre-quotient algebra).
    pub fn without_ideal(&self) -> RewriteSystem {
        let mut s = self.clone();
        s.use_ideal = false;
        s.rebuild_lookup();
        s
    }

    /// A copy with the unit specialized to 1 in every rule coefficient.
    pub fn specialize_unit_one(&self) -> RewriteSystem {
        let mut s = self.clone();
        s.name = format!("{}@u=1", s.name);
        for r in s.rules.iter_mut().chain(s.ideal_rules.iter_mut()) {
            r.rhs = r.rhs.specialize_unit_one();
        }
        s.rebuild_lookup();
        s
    }

    pub fn degree(&self, w: &Word) -> u64 {
        w.0.iter()
            .map(|&g| self.generators[g as usize].degree as u64)
            .sum()
    }

    pub fn weight(&self, w: &Word) -> (i64, i64) {
        let mut acc = (0, 0);
        for &g in &w.0 {
            let gw = self.generators[g as usize].weight;
            acc.0 += gw.0;
            acc.1 += gw.1;
        }
        acc
    }

    pub fn hweight(&self, w: &Word) -> (i64, i64) {
        let mut acc = (0, 0);
        for &g in &w.0 {
            let gw = self.generators[g as usize].hweight;
            acc.0 += gw.0;
            acc.1 += gw.1;
        }
        acc
    }

    /// Fully reduce `p` to its normal form.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, AlgError> {
        let mut budget = self.step_budget;
        let mut out = NCPoly::zero();
        let mut work: Vec<(Word, Scalar)> = p
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            let mut matched = None;
            'scan: for i in 0..w.len() {
                for l in 2..=self.max_lhs.min(w.len() - i) {
                    if let Some(&ri) = self.lookup.get(&w.0[i..i + l]) {
                        matched = Some((i, l, ri));
                        break 'scan;
                    }
                }
            }
            match matched {
                None => out.add_term(w, c),
                Some((i, l, ri)) => {
                    if budget == 0 {
                        return Err(AlgError::StepBudgetExceeded(self.step_budget));
                    }
                    budget -= 1;
                    let rule = self.rule_at(ri);
                    for (rw, rc) in &rule.rhs.terms {
                        let mut v = Vec::with_capacity(w.len() - l + rw.len());
                        v.extend_from_slice(&w.0[..i]);
                        v.extend_from_slice(&rw.0);
                        v.extend_from_slice(&w.0[i + l..]);
                        work.push((Word(v), c.mul(rc)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Normal form, panicking on budget exhaustion (internal identities).
    pub fn nf(&self, p: &NCPoly) -> NCPoly {
        self.normal_form(p).expect("normal form within step budget")
    }

    /// Product followed by normal form.
    pub fn mul_nf(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.nf(&a.mul(b))
    }

    /// Equality in the quotient algebra.
    pub fn eq(&self, a: &NCPoly, b: &NCPoly) -> bool {
        self.nf(&a.sub(b)).is_zero()
    }

    /// Graded star anti-automorphism: reverse the word, replace letters by
    /// their star partners, conjugate the coefficient, and apply the sign
    /// (-1)^(d1*d2) across every transposed pair of degree-carrying factors.
    pub fn star(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let degs: Vec<u8> = w
                .0
                .iter()
                .map(|&g| self.generators[g as usize].degree)
                .collect();
            let mut swaps = 0u64;
            for i in 0..degs.len() {
                for j in (i + 1)..degs.len() {
                    swaps += (degs[i] * degs[j]) as u64;
                }
            }
            let letters: Vec<u16> = w
                .0
                .iter()
                .rev()
                .map(|&g| self.generators[g as usize].star_partner as u16)
                .collect();
            let mut coeff = c.star(self.unit_mode);
            if swaps % 2 == 1 {
                coeff = coeff.neg();
            }
            out.add_term(Word(letters), coeff);
        }
        self.nf(&out)
    }

    /// Exterior differential: graded Leibniz derivation with d(gen) = its
    /// degree-1 partner and d(one-form generator) = 0.
    pub fn differential(&self, p: &NCPoly) -> Result<NCPoly, AlgError> {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let mut prefix_deg = 0u64;
            for (i, &g) in w.0.iter().enumerate() {
                let gen = &self.generators[g as usize];
                if gen.degree == 0 {
                    let d = gen
                        .form_partner
                        .ok_or_else(|| AlgError::MissingFormGenerator(gen.name.clone()))?;
                    let mut v = w.0.clone();
                    v[i] = d as u16;
                    let mut coeff = c.clone();
                    if prefix_deg % 2 == 1 {
                        coeff = coeff.neg();
                    }
                    out.add_term(Word(v), coeff);
                }
                prefix_deg += gen.degree as u64;
            }
        }
        self.normal_form(&out)
    }

    /// Check local confluence: every overlap of two rule left-hand sides
    /// reduces to the same normal form along both reduction orders.
    pub fn check_overlaps(&self) -> OverlapReport {
        let mut all: Vec<&RewriteRule> = self.rules.iter().collect();
        if self.use_ideal {
            all.extend(self.ideal_rules.iter());
        }
        let mut report = OverlapReport {
            overlaps_checked: 0,
            ambiguities: Vec::new(),
        };
        for r1 in &all {
            for r2 in &all {
                let u = &r1.lhs.0;
                let v = &r2.lhs.0;
                // Proper overlaps: a suffix of u equals a prefix of v.
                for k in 1..u.len().min(v.len()) {
                    if u[u.len() - k..] == v[..k] {
                        let mut w = u.clone();
                        w.extend_from_slice(&v[k..]);
                        self.check_one_overlap(&Word(w), r1, 0, r2, u.len() - k, &mut report);
                    }
                }
                // Containment: v occurs strictly inside u.
                if v.len() < u.len() {
                    for i in 0..=u.len() - v.len() {
                        if &u[i..i + v.len()] == v.as_slice() {
                            self.check_one_overlap(&Word(u.clone()), r1, 0, r2, i, &mut report);
                        }
                    }
                }
            }
        }
        report
    }

    fn check_one_overlap(
        &self,
        w: &Word,
        r1: &RewriteRule,
        pos1: usize,
        r2: &RewriteRule,
        pos2: usize,
        report: &mut OverlapReport,
    ) {
        report.overlaps_checked += 1;
        let a = self.nf(&apply_rule_at(w, r1, pos1));
        let b = self.nf(&apply_rule_at(w, r2, pos2));
        if a != b {
            report.ambiguities.push(Ambiguity {
                word: w.clone(),
                reduct_a: a,
                reduct_b: b,
            });
        }
    }

    /// Saturate the ideal rules under overlap consequences: every unresolved
    /// critical pair yields a derived relation (the difference of its two
    /// reducts, which lies in the ideal by construction); its leading word is
    /// eliminated by a new ideal rule. Repeats until all overlaps resolve or
    /// `max_rounds` is hit. Returns the number of rules added.
    ///
    /// This is only used when constructing a presentation of a differential
    /// ideal whose generating relations are not already confluent; it is not
    /// a general completion facility.
    pub fn saturate_overlaps(&mut self, max_rounds: usize) -> Result<usize, AlgError> {
        let mut added = 0;
        for _ in 0..max_rounds {
            let report = self.check_overlaps();
            if report.resolved() {
                return Ok(added);
            }
            let mut new_rules: Vec<(Word, NCPoly)> = Vec::new();
            for amb in &report.ambiguities {
                let diff = self.nf(&amb.reduct_a.sub(&amb.reduct_b));
                if diff.is_zero() {
                    continue;
                }
                let (w, c) = diff.leading().unwrap();
                let (w, c) = (w.clone(), c.clone());
                if new_rules.iter().any(|(lw, _)| *lw == w) {
                    continue;
                }
                let cinv = c.monomial_inv()?;
                let rest = diff.sub(&NCPoly::from_term(w.clone(), c));
                new_rules.push((w, rest.neg().scale(&cinv)));
            }
            if new_rules.is_empty() {
                return Ok(added);
            }
            for (lhs, rhs) in new_rules {
                if self.lookup.contains_key(&lhs.0) {
                    continue;
                }
                self.add_ideal_rule(lhs, rhs)?;
                added += 1;
            }
        }
        Ok(added)
    }

    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&g| self.generators[g as usize].name.clone())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn poly_string(&self, p: &NCPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        p.terms
            .iter()
            .map(|(w, c)| format!("({}) {}", c, self.word_string(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parse a polynomial expression in this system's generator names.
    /// Grammar: terms separated by top-level `+`/`-`; each term is a
    /// `*`-free sequence of factors separated by spaces; a factor is a
    /// generator name or a parenthesized scalar literal.
    pub fn parse_poly(&self, src: &str) -> Result<NCPoly, AlgError> {
        let mut acc = NCPoly::zero();
        for (sign, term) in split_terms(src) {
            let mut coeff = Scalar::from_int(sign);
            let mut letters = Vec::new();
            let mut rest = term.trim();
            while !rest.is_empty() {
                if let Some(stripped) = rest.strip_prefix('(') {
                    let close = stripped
                        .find(')')
                        .ok_or_else(|| AlgError::UnknownGenerator(term.clone()))?;
                    let lit = &stripped[..close];
                    let s = parse_scalar(lit)
                        .map_err(|_| AlgError::UnknownGenerator(lit.to_string()))?;
                    coeff = coeff.mul(&s);
                    rest = stripped[close + 1..].trim_start();
                } else {
                    let end = rest
                        .find(|c: char| c.is_whitespace() || c == '(')
                        .unwrap_or(rest.len());
                    let name = &rest[..end];
                    letters.push(self.gen_index(name)?);
                    rest = rest[end..].trim_start();
                }
            }
            acc.add_term(Word(letters), coeff);
        }
        Ok(acc)
    }
}

fn split_terms(src: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign = 1i64;
    let mut depth = 0i32;
    let mut expect_term = true;
    for ch in src.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
                expect_term = false;
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if expect_term {
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    out.push((sign, cur.clone()));
                    cur.clear();
                    sign = if ch == '-' { -1 } else { 1 };
                    expect_term = true;
                }
            }
            c => {
                cur.push(c);
                if !c.is_whitespace() {
                    expect_term = false;
                }
            }
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur));
    }
    out
}

fn apply_rule_at(w: &Word, r: &RewriteRule, pos: usize) -> NCPoly {
    let l = r.lhs.len();
    debug_assert_eq!(&w.0[pos..pos + l], r.lhs.0.as_slice());
    let mut out = NCPoly::zero();
    for (rw, rc) in &r.rhs.terms {
        let mut v = Vec::with_capacity(w.len() - l + rw.len());
        v.extend_from_slice(&w.0[..pos]);
        v.extend_from_slice(&rw.0);
        v.extend_from_slice(&w.0[pos + l..]);
        out.add_term(Word(v), rc.clone());
    }
    out
}

#[derive(Debug, Clone)]
pub struct OverlapReport {
    pub overlaps_checked: usize,
    pub ambiguities: Vec<Ambiguity>,
}

impl OverlapReport {
    pub fn resolved(&self) -> bool {
        self.ambiguities.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub word: Word,
    pub reduct_a: NCPoly,
    pub reduct_b: NCPoly,
}

/// The unit power u^k with e^(2 pi i r.Theta.r') = mu^k, for Theta given in
/// units of theta as an antisymmetric rational matrix and mu = e^(i pi theta).
pub fn deformation_phase(
    r: (i64, i64),
    rp: (i64, i64),
    theta_units: &[[BigRational; 2]; 2],
) -> Result<Scalar, AlgError> {
    let big = |n: i64| BigRational::from_integer(n.into());
    let x = &theta_units[0][0] * big(r.0 * rp.0)
        + &theta_units[0][1] * big(r.0 * rp.1)
        + &theta_units[1][0] * big(r.1 * rp.0)
        + &theta_units[1][1] * big(r.1 * rp.1);
    let k2 = &x * big(2);
    if !k2.is_integer() {
        return Err(AlgError::Scalar(ScalarError::NonIntegralPhase {
            num: k2.numer().to_i64().unwrap_or(0),
            den: k2.denom().to_i64().unwrap_or(0),
        }));
    }
    Ok(Scalar::unit_pow(k2.to_integer().to_i64().expect("small phase")))
}

/// The standard antisymmetric 2x2 matrix [[0, s], [-s, 0]].
pub fn antisym(s: BigRational) -> [[BigRational; 2]; 2] {
    [
        [BigRational::zero(), s.clone()],
        [BigRational::zero() - s, BigRational::zero()],
    ]
}

impl fmt::Display for OverlapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} overlaps checked, {} ambiguities",
            self.overlaps_checked,
            self.ambiguities.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A two-generator system x < y with y x -> c x y.
    fn tiny(c: Scalar) -> RewriteSystem {
        let gens = vec![
            Generator {
                name: "x".into(),
                degree: 0,
                weight: (1, 0),
                star_partner: 0,
                form_partner: None,
                hweight: (0, 0),
            },
            Generator {
                name: "y".into(),
                degree: 0,
                weight: (0, 1),
                star_partner: 1,
                form_partner: None,
                hweight: (0, 0),
            },
        ];
        let mut sys = RewriteSystem::new("tiny", gens, UnitMode::PhaseUnit);
        let rhs = NCPoly::from_term(Word(vec![0, 1]), c);
        sys.add_rule(Word(vec![1, 0]), rhs).unwrap();
        sys
    }

    #[test]
    fn sorts_with_phase() {
        let sys = tiny(Scalar::unit_pow(2));
        let p = NCPoly::from_term(Word(vec![1, 0, 1, 0]), Scalar::one());
        let n = sys.nf(&p);
        // y x y x -> u^6 x x y y (three inversions)
        assert_eq!(
            n,
            NCPoly::from_term(Word(vec![0, 0, 1, 1]), Scalar::unit_pow(6))
        );
        // idempotent
        assert_eq!(sys.nf(&n), n);
    }

    #[test]
    fn single_rule_confluent() {
        let sys = tiny(Scalar::unit_pow(2));
        let rep = sys.check_overlaps();
        assert!(rep.resolved(), "{}", rep);
    }

    #[test]
    fn budget_trips() {
        let mut sys = tiny(Scalar::one());
        sys.step_budget = 1;
        let p = NCPoly::from_term(Word(vec![1, 0, 1, 0]), Scalar::one());
        assert!(matches!(
            sys.normal_form(&p),
            Err(AlgError::StepBudgetExceeded(_))
        ));
    }

    #[test]
    fn parse_roundtrip() {
        let sys = tiny(Scalar::unit_pow(2));
        let p = sys.parse_poly("x y - (u^-2) y x").unwrap();
        // x y - u^-2 (u^2 x y) = 0
        assert!(sys.nf(&p).is_zero());
        assert!(sys.eq(
            &sys.parse_poly("x y").unwrap(),
            &sys.parse_poly("(u^-2) y x").unwrap()
        ));
    }

    #[test]
    fn phases() {
        use num_bigint::BigInt;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let m = antisym(half);
        // (1,0) x (0,-1) -> mu^-1
        assert_eq!(
            deformation_phase((1, 0), (0, -1), &m).unwrap(),
            Scalar::unit_pow(-1)
        );
        // (1,0) x (0,1) -> mu
        assert_eq!(
            deformation_phase((1, 0), (0, 1), &m).unwrap(),
            Scalar::unit_pow(1)
        );
        // r = r' -> 1
        assert_eq!(
            deformation_phase((3, -2), (3, -2), &m).unwrap(),
            Scalar::unit_pow(0)
        );
    }
}
