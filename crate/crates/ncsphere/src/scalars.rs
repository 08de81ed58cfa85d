//! Exact coefficient arithmetic: the number field Q(i, sqrt2) tensored with
//! Laurent polynomials in a single formal deformation unit `u`.
//!
//! In phase mode the unit is a unimodular phase (u* = u^-1); in real mode the
//! unit is a real parameter (u* = u). All arithmetic is exact; rationals are
//! arbitrary precision.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// How the formal unit behaves under the anti-involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitMode {
    /// u is a unimodular phase: star(u) = u^-1.
    PhaseUnit,
    /// u is real: star(u) = u.
    RealUnit,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScalarError {
    #[error("evaluation point u0 = 0 is not allowed")]
    ZeroUnit,
    #[error("phase-mode evaluation requires |u0| = 1, got |u0| = {0}")]
    NonUnimodular(f64),
    #[error("phase exponent {num}/{den} is not an integer power of the unit")]
    NonIntegralPhase { num: i64, den: i64 },
    #[error("division by a non-monomial or zero scalar")]
    NonUnitDivisor,
}

/// An element of Q(i, sqrt2) on the basis {1, i, sqrt2, i*sqrt2}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    /// Components on {1, i, sqrt2, i*sqrt2} in that order.
    pub c: [BigRational; 4],
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        let mut e = Self::zero();
        e.c[0] = BigRational::one();
        e
    }

    pub fn i() -> Self {
        let mut e = Self::zero();
        e.c[1] = BigRational::one();
        e
    }

    pub fn sqrt2() -> Self {
        let mut e = Self::zero();
        e.c[2] = BigRational::one();
        e
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut e = Self::zero();
        e.c[0] = r;
        e
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        FieldElem {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            c: [
                -self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        self.add(&o.neg())
    }

    /// Exact product using i^2 = -1 and (sqrt2)^2 = 2.
    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        let a = &self.c;
        let b = &o.c;
        let two = rat(2, 1);
        FieldElem {
            c: [
                &a[0] * &b[0] - &a[1] * &b[1] + &two * (&a[2] * &b[2]) - &two * (&a[3] * &b[3]),
                &a[0] * &b[1] + &a[1] * &b[0] + &two * (&a[2] * &b[3]) + &two * (&a[3] * &b[2]),
                &a[0] * &b[2] + &a[2] * &b[0] - &a[1] * &b[3] - &a[3] * &b[1],
                &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1],
            ],
        }
    }

    /// Complex conjugation: fixes rationals and sqrt2, negates i-components.
    pub fn conj(&self) -> FieldElem {
        FieldElem {
            c: [
                self.c[0].clone(),
                -self.c[1].clone(),
                self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    /// Galois conjugate sending sqrt2 to -sqrt2.
    fn conj_sqrt2(&self) -> FieldElem {
        FieldElem {
            c: [
                self.c[0].clone(),
                self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    /// Exact multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero field element");
        // Multiply by the three nontrivial Galois conjugates; the product of
        // all four is a nonzero rational (the field norm).
        let g1 = self.conj();
        let g2 = self.conj_sqrt2();
        let g3 = g1.conj_sqrt2();
        let num = g1.mul(&g2).mul(&g3);
        let norm = self.mul(&num);
        debug_assert!(norm.c[1].is_zero() && norm.c[2].is_zero() && norm.c[3].is_zero());
        let n = norm.c[0].clone();
        assert!(!n.is_zero());
        let ninv = FieldElem::from_rational(n.recip());
        num.mul(&ninv)
    }

    pub fn eval(&self) -> Complex64 {
        let s2 = std::f64::consts::SQRT_2;
        let r = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        Complex64::new(r(&self.c[0]) + s2 * r(&self.c[2]), r(&self.c[1]) + s2 * r(&self.c[3]))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "sqrt2", "i*sqrt2"];
        let mut parts = Vec::new();
        for (k, name) in names.iter().enumerate() {
            if self.c[k].is_zero() {
                continue;
            }
            let mag = self.c[k].abs();
            let sign = if self.c[k].is_negative() { "-" } else { "+" };
            let body = if name.is_empty() {
                format!("{}", mag)
            } else if mag.is_one() {
                name.to_string()
            } else {
                format!("{}*{}", mag, name)
            };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in parts.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", sign)?;
            }
            write!(f, "{}", body)?;
        }
        Ok(())
    }
}

/// A Laurent polynomial in the formal unit with FieldElem coefficients.
/// Canonical: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub terms: BTreeMap<i64, FieldElem>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_field(FieldElem::one())
    }

    pub fn from_field(f: FieldElem) -> Self {
        let mut s = Scalar::zero();
        if !f.is_zero() {
            s.terms.insert(0, f);
        }
        s
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_field(FieldElem::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_field(FieldElem::from_ratio(n, d))
    }

    pub fn i() -> Self {
        Scalar::from_field(FieldElem::i())
    }

    pub fn sqrt2() -> Self {
        Scalar::from_field(FieldElem::sqrt2())
    }

    /// u^k (the unit raised to an integer power).
    pub fn unit_pow(k: i64) -> Self {
        let mut s = Scalar::zero();
        s.terms.insert(k, FieldElem::one());
        s
    }

    /// c * u^k.
    pub fn monomial(c: FieldElem, k: i64) -> Self {
        let mut s = Scalar::zero();
        if !c.is_zero() {
            s.terms.insert(k, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| *c == FieldElem::one())
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            let cur = out.terms.remove(k).unwrap_or_else(FieldElem::zero);
            let s = cur.add(c);
            if !s.is_zero() {
                out.terms.insert(*k, s);
            }
        }
        out
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let k = ka + kb;
                let p = ca.mul(cb);
                let cur = out.terms.remove(&k).unwrap_or_else(FieldElem::zero);
                let s = cur.add(&p);
                if !s.is_zero() {
                    out.terms.insert(k, s);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Scalar {
        self.mul(&Scalar::from_field(c.clone()))
    }

    /// True iff the scalar is a single monomial c * u^k (a unit of the ring).
    pub fn as_monomial(&self) -> Option<(i64, &FieldElem)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((*k, c))
        } else {
            None
        }
    }

    /// Exact inverse of a monomial scalar.
    pub fn monomial_inv(&self) -> Result<Scalar, ScalarError> {
        match self.as_monomial() {
            Some((k, c)) => Ok(Scalar::monomial(c.inv(), -k)),
            None => Err(ScalarError::NonUnitDivisor),
        }
    }

    /// The anti-involution under the given unit mode.
    pub fn star(&self, mode: UnitMode) -> Scalar {
        let mut out = Scalar::zero();
        for (k, c) in &self.terms {
            let kk = match mode {
                UnitMode::PhaseUnit => -*k,
                UnitMode::RealUnit => *k,
            };
            out.terms.insert(kk, c.conj());
        }
        out
    }

    /// Substitute u := 1 (classical specialization of the unit).
    pub fn specialize_unit_one(&self) -> Scalar {
        let mut acc = FieldElem::zero();
        for c in self.terms.values() {
            acc = acc.add(c);
        }
        Scalar::from_field(acc)
    }

    /// Numeric evaluation at u := u0.
    pub fn eval(&self, u0: Complex64, mode: UnitMode) -> Result<Complex64, ScalarError> {
        if u0.norm() == 0.0 {
            return Err(ScalarError::ZeroUnit);
        }
        if mode == UnitMode::PhaseUnit && (u0.norm() - 1.0).abs() > 1e-12 {
            return Err(ScalarError::NonUnimodular(u0.norm()));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            acc += c.eval() * u0.powi(*k as i32);
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *k == 0 {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*u^{}", c, k)?;
            }
        }
        Ok(())
    }
}

/// Parse a scalar literal. Grammar: sum of terms separated by `+`/`-`;
/// each term is a `*`-separated product of factors; a factor is a rational
/// `p` or `p/q`, one of `i`, `sqrt2`, or the unit `u`/`mu`/`q` with an
/// optional integer exponent `^k`.
pub fn parse_scalar(src: &str) -> Result<Scalar, String> {
    let src = src.trim();
    if src.is_empty() {
        return Err("empty scalar literal".into());
    }
    // Split into signed terms at top level (no parentheses in the grammar).
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign = 1i64;
    let mut chars = src.chars().peekable();
    let mut expect_term = true;
    let mut last_op = false;
    while let Some(ch) = chars.next() {
        if ch.is_whitespace() {
            continue;
        }
        if last_op && (ch == '+' || ch == '-') {
            // Sign belongs to an exponent or factor, e.g. "mu^-1".
            cur.push(ch);
            last_op = false;
            continue;
        }
        last_op = ch == '^' || ch == '*';
        match ch {
            '+' | '-' if !expect_term => {
                terms.push((sign, cur.trim().to_string()));
                cur = String::new();
                sign = if ch == '-' { -1 } else { 1 };
                expect_term = true;
            }
            '-' if expect_term => {
                sign = -sign;
            }
            '+' if expect_term => {}
            c if c.is_whitespace() => {}
            c => {
                cur.push(c);
                expect_term = false;
            }
        }
    }
    if !cur.trim().is_empty() {
        terms.push((sign, cur.trim().to_string()));
    }
    let mut acc = Scalar::zero();
    for (sg, term) in terms {
        let mut val = Scalar::from_int(sg);
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(format!("empty factor in term '{}'", term));
            }
            val = val.mul(&parse_factor(factor)?);
        }
        acc = acc.add(&val);
    }
    Ok(acc)
}

fn parse_factor(f: &str) -> Result<Scalar, String> {
    let (base, exp) = match f.split_once('^') {
        Some((b, e)) => {
            let k: i64 = e
                .trim()
                .parse()
                .map_err(|_| format!("bad exponent '{}'", e))?;
            (b.trim(), k)
        }
        None => (f, 1),
    };
    let pow = |s: Scalar, k: i64| -> Result<Scalar, String> {
        if k >= 0 {
            let mut out = Scalar::one();
            for _ in 0..k {
                out = out.mul(&s);
            }
            Ok(out)
        } else {
            let inv = s
                .monomial_inv()
                .map_err(|_| format!("cannot invert '{}'", base))?;
            let mut out = Scalar::one();
            for _ in 0..(-k) {
                out = out.mul(&inv);
            }
            Ok(out)
        }
    };
    match base {
        "i" => pow(Scalar::i(), exp),
        "sqrt2" => pow(Scalar::sqrt2(), exp),
        "u" | "mu" | "q" => Ok(Scalar::unit_pow(exp)),
        _ => {
            let r = if let Some((n, d)) = base.split_once('/') {
                let n: i64 = n.trim().parse().map_err(|_| format!("bad rational '{}'", base))?;
                let d: i64 = d.trim().parse().map_err(|_| format!("bad rational '{}'", base))?;
                Scalar::from_ratio(n, d)
            } else {
                let n: i64 = base
                    .trim()
                    .parse()
                    .map_err(|_| format!("unknown factor '{}'", base))?;
                Scalar::from_int(n)
            };
            pow(r, exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::unit_pow(1)
    }

    #[test]
    fn laurent_products() {
        // (q - q^-1) * q = q^2 - 1
        let lhs = q().sub(&Scalar::unit_pow(-1)).mul(&q());
        let rhs = Scalar::unit_pow(2).sub(&Scalar::one());
        assert_eq!(lhs, rhs);
        // mu * mu = lambda (u * u = u^2)
        assert_eq!(q().mul(&q()), Scalar::unit_pow(2));
        // (1+i)(1-i) = 2
        let a = Scalar::one().add(&Scalar::i());
        let b = Scalar::one().sub(&Scalar::i());
        assert_eq!(a.mul(&b), Scalar::from_int(2));
    }

    #[test]
    fn star_modes() {
        assert_eq!(q().star(UnitMode::PhaseUnit), Scalar::unit_pow(-1));
        assert_eq!(q().star(UnitMode::RealUnit), q());
        // star(i*q^2) = -i*q^2 in real mode
        let s = Scalar::i().mul(&Scalar::unit_pow(2));
        assert_eq!(s.star(UnitMode::RealUnit), s.neg());
    }

    #[test]
    fn eval_points() {
        let mu = q();
        let p = Complex64::from_polar(1.0, std::f64::consts::PI / 8.0);
        let v = mu.eval(p, UnitMode::PhaseUnit).unwrap();
        assert!((v - p).norm() < 1e-14);
        // q^2 - 1 at q = 0.5 is -0.75
        let s = Scalar::unit_pow(2).sub(&Scalar::one());
        let v = s.eval(Complex64::new(0.5, 0.0), UnitMode::RealUnit).unwrap();
        assert!((v - Complex64::new(-0.75, 0.0)).norm() < 1e-14);
        assert_eq!(
            s.eval(Complex64::new(0.0, 0.0), UnitMode::RealUnit),
            Err(ScalarError::ZeroUnit)
        );
        assert!(matches!(
            mu.eval(Complex64::new(0.5, 0.0), UnitMode::PhaseUnit),
            Err(ScalarError::NonUnimodular(_))
        ));
    }

    #[test]
    fn field_inverse() {
        let x = FieldElem::from_ratio(3, 7)
            .add(&FieldElem::i().mul(&FieldElem::from_int(2)))
            .add(&FieldElem::sqrt2().mul(&FieldElem::from_ratio(-1, 3)));
        let prod = x.mul(&x.inv());
        assert_eq!(prod, FieldElem::one());
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_scalar("1").unwrap(), Scalar::one());
        assert_eq!(parse_scalar("-1/2*i").unwrap(), Scalar::from_ratio(-1, 2).mul(&Scalar::i()));
        assert_eq!(parse_scalar("mu^-1").unwrap(), Scalar::unit_pow(-1));
        assert_eq!(
            parse_scalar("q^-2 * 1/2 + i*sqrt2").unwrap(),
            Scalar::from_ratio(1, 2)
                .mul(&Scalar::unit_pow(-2))
                .add(&Scalar::i().mul(&Scalar::sqrt2()))
        );
        assert_eq!(
            parse_scalar("q^-1 - q").unwrap(),
            Scalar::unit_pow(-1).sub(&Scalar::unit_pow(1))
        );
    }

    fn arb_field() -> impl Strategy<Value = FieldElem> {
        (
            -20i64..20,
            -20i64..20,
            -20i64..20,
            -20i64..20,
            1i64..5,
        )
            .prop_map(|(a, b, c, d, den)| {
                FieldElem {
                    c: [
                        super::rat(a, den),
                        super::rat(b, den),
                        super::rat(c, den),
                        super::rat(d, den),
                    ],
                }
            })
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        proptest::collection::vec((-4i64..4, arb_field()), 0..4).prop_map(|v| {
            let mut s = Scalar::zero();
            for (k, c) in v {
                s = s.add(&Scalar::monomial(c, k));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn star_antiautomorphism(a in arb_scalar(), b in arb_scalar()) {
            for mode in [UnitMode::PhaseUnit, UnitMode::RealUnit] {
                prop_assert_eq!(a.mul(&b).star(mode), a.star(mode).mul(&b.star(mode)));
                prop_assert_eq!(a.star(mode).star(mode), a.clone());
            }
        }

        #[test]
        fn eval_homomorphism(a in arb_scalar(), b in arb_scalar()) {
            let u0 = Complex64::new(0.37, 0.0);
            let ea = a.eval(u0, UnitMode::RealUnit).unwrap();
            let eb = b.eval(u0, UnitMode::RealUnit).unwrap();
            let eab = a.mul(&b).eval(u0, UnitMode::RealUnit).unwrap();
            let scale = 1.0_f64.max(ea.norm() * eb.norm());
            prop_assert!((eab - ea * eb).norm() <= 1e-12 * scale);
        }
    }
}
