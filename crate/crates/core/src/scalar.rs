//! Exact scalars: rationals, polynomials in named central deformation
//! parameters, and total-degree truncation.
//!
//! Parameters (`h`, `xi`, `theta`, ...) are even and central, so
//! [`ParamPolynomial`] is an ordinary commutative polynomial ring over ℚ.
//! Terms are stored sorted by monomial, where monomials compare
//! lexicographically on `(parameter name, exponent)` pairs; two polynomials
//! are equal exactly when their term vectors are.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

static INTERNED: Lazy<Mutex<HashSet<&'static str>>> = Lazy::new(|| Mutex::new(HashSet::new()));

/// An interned formal parameter name.
#[derive(Clone, Copy)]
pub struct Param(&'static str);

impl Param {
    pub fn new(name: &str) -> Param {
        let mut set = INTERNED.lock().expect("parameter interner poisoned");
        if let Some(existing) = set.get(name) {
            return Param(existing);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Param(leaked)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl PartialEq for Param {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0) || self.0 == other.0
    }
}

impl Eq for Param {}

impl std::hash::Hash for Param {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialOrd for Param {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Param {
    fn cmp(&self, other: &Self) -> Ordering {
        if std::ptr::eq(self.0, other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A power product of parameters, sorted by parameter name, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(Param, u32); 2]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(p: Param) -> Self {
        let mut v = SmallVec::new();
        v.push((p, 1));
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Param, u32)] {
        &self.0
    }

    pub fn exponent(&self, p: Param) -> u32 {
        self.0
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, graded: &BTreeSet<Param>) -> u32 {
        self.0
            .iter()
            .filter(|(p, _)| graded.contains(p))
            .map(|(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(p, e) in &self.0 {
            let f = other.exponent(p);
            if f > 0 {
                out.push((p, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(p, e) in &self.0 {
            let mut d = 0;
            if j < other.0.len() && other.0[j].0 == p {
                d = other.0[j].1;
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < p {
                return None;
            }
            match e.cmp(&d) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((p, e - d)),
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Pure lexicographic monomial order with variables ranked by name
    /// (earlier name = more significant). Unlike the derived `Ord` this is
    /// multiplicative, which division needs.
    fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }

    fn render(&self, pow: &str) -> String {
        self.0
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.name().to_string()
                } else {
                    format!("{}{pow}{e}", p.name())
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Exact polynomial in formal parameters with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ParamPolynomial {
    terms: Vec<(Monomial, Rational)>,
}

pub type Poly = ParamPolynomial;

impl ParamPolynomial {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(rat(n, d))
    }

    pub fn param(name: &str) -> Self {
        Self::from_param(Param::new(name))
    }

    pub fn from_param(p: Param) -> Self {
        Self {
            terms: vec![(Monomial::var(p), Rational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Constant term (the value at the origin of parameter space).
    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.factors().iter().map(|(p, _)| *p))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Smallest graded degree among the terms; `None` for the zero polynomial.
    pub fn low_degree(&self, graded: &BTreeSet<Param>) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree_in(graded)).min()
    }

    pub fn homogeneous_part(&self, graded: &BTreeSet<Param>, degree: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(graded) == degree)
                .cloned()
                .collect(),
        }
    }

    /// Coefficient of `p^k`, as a polynomial in the remaining parameters.
    pub fn coefficient_of(&self, p: Param, k: u32) -> Self {
        let pk = if k == 0 {
            Monomial::one()
        } else {
            let mut v = SmallVec::new();
            v.push((p, k));
            Monomial(v)
        };
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(p) == k)
                .map(|(m, c)| (m.div(&pk).expect("exponent checked"), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Evaluates assigned parameters; unassigned ones stay formal.
    pub fn substitute(&self, assignment: &Assignment) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut rest = SmallVec::new();
            for &(p, e) in m.factors() {
                match assignment.values.get(&p) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    None => rest.push((p, e)),
                }
            }
            (Monomial(rest), coeff)
        }))
    }

    /// Drops every term whose graded degree exceeds the order.
    pub fn truncate(&self, order: &TruncationOrder) -> Self {
        if self
            .terms
            .iter()
            .all(|(m, _)| m.degree_in(&order.graded) <= order.degree)
        {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(&order.graded) <= order.degree)
                .cloned()
                .collect(),
        }
    }

    /// Product truncated on the fly; skips pairs that cannot survive.
    pub fn mul_truncated(&self, other: &Self, order: &TruncationOrder) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree_in(&order.graded);
            if da > order.degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree_in(&order.graded) > order.degree {
                    continue;
                }
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_lex(&b.0))
    }

    /// Exact quotient `self / divisor` in the polynomial ring, or `None`
    /// when the divisor does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if divisor.is_monomial() {
            let (dm, dc) = &divisor.terms[0];
            let inv = dc.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(dm)?, c * &inv));
            }
            return Some(Self::from_terms(out));
        }
        let (lm, lc) = divisor.leading().cloned().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            let step = Self::monomial(qm.clone(), qc.clone());
            rem = &rem - &(&step * divisor);
            quotient.push((qm, qc));
        }
        Some(Self::from_terms(quotient))
    }

    /// Largest monomial dividing every term, and the gcd of the numerators
    /// over the lcm of denominators (positive). Together they form the
    /// cheap content used to tidy reported results.
    pub fn monomial_content(&self) -> (Monomial, Rational) {
        let mut iter = self.terms.iter();
        let Some((first, c0)) = iter.next() else {
            return (Monomial::one(), Rational::one());
        };
        let mut mono = first.clone();
        let mut num = c0.numer().abs();
        let mut den = c0.denom().clone();
        for (m, c) in iter {
            let mut keep = SmallVec::new();
            for &(p, e) in mono.factors() {
                let f = m.exponent(p);
                if f > 0 {
                    keep.push((p, e.min(f)));
                }
            }
            mono = Monomial(keep);
            num = num_integer::Integer::gcd(&num, c.numer());
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        (mono, Rational::new(num, den))
    }

    pub fn eval(&self, point: &Assignment) -> Result<Rational> {
        let v = self.substitute(point);
        v.as_constant()
            .ok_or_else(|| Error::usage(format!("parameters of {v} left unassigned")))
    }

    fn render(&self, pow: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.render(pow));
            } else {
                out.push_str(&format!("{a}*{}", m.render(pow)));
            }
        }
        out
    }

    /// Rendering in workbench-file syntax (`**` for powers).
    pub fn to_dsl(&self) -> String {
        self.render("**")
    }

    /// Rendering that can be placed next to `*` without ambiguity.
    pub fn to_dsl_factor(&self) -> String {
        let s = self.to_dsl();
        if self.terms.len() > 1 || s.starts_with('-') {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("^"))
    }
}

impl fmt::Debug for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn merge(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), sign(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
    Poly { terms: out }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        if rhs.is_zero() {
            return self.clone();
        }
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        Poly::from_terms(self.terms.iter().flat_map(|(ma, ca)| {
            rhs.terms.iter().map(move |(mb, cb)| (ma.mul(mb), ca * cb))
        }))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

/// Truncation by total degree in a chosen subset of parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationOrder {
    pub degree: u32,
    pub graded: BTreeSet<Param>,
}

impl TruncationOrder {
    pub fn new(degree: u32, graded: &[&str]) -> Self {
        Self {
            degree,
            graded: graded.iter().map(|n| Param::new(n)).collect(),
        }
    }
}

/// The declared parameter set of a session.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSpace {
    declared: BTreeSet<Param>,
}

impl ParamSpace {
    pub fn new<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        Self {
            declared: names.into_iter().map(Param::new).collect(),
        }
    }

    pub fn declare(&mut self, name: &str) -> bool {
        self.declared.insert(Param::new(name))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.declared.contains(&Param::new(name))
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.declared.iter().copied()
    }

    /// An assignment whose keys are checked against the declared set.
    pub fn assignment<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a str, Rational)>,
    ) -> Result<Assignment> {
        let mut values = BTreeMap::new();
        for (name, v) in pairs {
            let p = Param::new(name);
            if !self.declared.contains(&p) {
                return Err(Error::definition(format!("unknown parameter {name}")));
            }
            values.insert(p, v);
        }
        Ok(Assignment { values })
    }
}

/// Partial map from parameters to rational values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<Param, Rational>,
}

impl Assignment {
    /// Unchecked constructor; prefer [`ParamSpace::assignment`] for user input.
    pub fn new<'a>(pairs: impl IntoIterator<Item = (&'a str, Rational)>) -> Self {
        Self {
            values: pairs.into_iter().map(|(n, v)| (Param::new(n), v)).collect(),
        }
    }

    pub fn single(name: &str, v: Rational) -> Self {
        Self::new([(name, v)])
    }

    pub fn get(&self, p: Param) -> Option<&Rational> {
        self.values.get(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Substitution with keys validated against `space`.
pub fn poly_substitute(
    space: &ParamSpace,
    p: &Poly,
    assignment: &[(&str, Rational)],
) -> Result<Poly> {
    let a = space.assignment(assignment.iter().map(|(n, v)| (*n, v.clone())))?;
    Ok(p.substitute(&a))
}

pub fn poly_truncate(p: &Poly, order: &TruncationOrder) -> Poly {
    p.truncate(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Poly {
        Poly::param("h")
    }
    fn xi() -> Poly {
        Poly::param("xi")
    }

    #[test]
    fn substitute_examples() {
        let space = ParamSpace::new(["h", "xi"]);
        let p = &(&h() * &xi()) + &Poly::from_int(2);
        let r = poly_substitute(&space, &p, &[("h", int(0))]).unwrap();
        assert_eq!(r, Poly::from_int(2));

        let q = &h().pow(2) - &xi();
        let r = poly_substitute(&space, &q, &[("h", int(1)), ("xi", int(1))]).unwrap();
        assert!(r.is_zero());

        let err = poly_substitute(&space, &q, &[("theta", int(1))]).unwrap_err();
        assert!(matches!(err, Error::Definition(_)));
    }

    #[test]
    fn truncate_examples() {
        let t = TruncationOrder::new(3, &["xi"]);
        let p = &(&Poly::one() + &xi()) + &xi().pow(5);
        assert_eq!(p.truncate(&t), &Poly::one() + &xi());

        let q = &h() * &xi().pow(3);
        assert_eq!(q.truncate(&t), q);

        // (1+ξ)(1−ξ+ξ²) = 1 + ξ³; cut at 2 leaves 1.
        let a = &Poly::one() + &xi();
        let b = &(&Poly::one() - &xi()) + &xi().pow(2);
        let full = &a * &b;
        let oracle = Poly::from_terms(
            full.terms()
                .iter()
                .filter(|(m, _)| m.total_degree() <= 2)
                .cloned(),
        );
        let t2 = TruncationOrder::new(2, &["xi"]);
        assert_eq!(full.truncate(&t2), oracle);
        assert_eq!(oracle, Poly::one());
        assert_eq!(a.mul_truncated(&b, &t2), Poly::one());
    }

    #[test]
    fn exact_division() {
        let a = &h() + &xi();
        let b = &h() - &(&Poly::from_int(2) * &xi());
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(a.exact_div(&b), None);
        assert_eq!(
            (&h() * &xi()).exact_div(&h()),
            Some(xi())
        );
    }

    #[test]
    fn canonical_order_and_render() {
        let p = &(&xi() * &Poly::from_ratio(-1, 4)) + &h().pow(2);
        assert_eq!(p.to_string(), "h^2 - 1/4*xi");
        assert_eq!(p.to_dsl(), "h**2 - 1/4*xi");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn coefficient_extraction() {
        let p = &(&h() * &xi()) + &(&xi().pow(2) * &Poly::from_int(3));
        assert_eq!(p.coefficient_of(Param::new("xi"), 1), h());
        assert_eq!(p.coefficient_of(Param::new("xi"), 2), Poly::from_int(3));
        assert!(p.coefficient_of(Param::new("xi"), 0).is_zero());
    }
}
