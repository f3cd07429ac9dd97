use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lie::{LieSuperAlgebra, Parity};
use crate::scalar::{rat, Poly, Rational, TruncationOrder};

/// Ordered monomial `e_0^{k_0} e_1^{k_1} …` in basis order. Odd generators
/// have exponent at most 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PbwMonomial(SmallVec<[u16; 16]>);

impl PbwMonomial {
    pub fn one(dim: usize) -> Self {
        PbwMonomial(SmallVec::from_elem(0, dim))
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut m = Self::one(dim);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exponents: impl Into<SmallVec<[u16; 16]>>) -> Self {
        PbwMonomial(exponents.into())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Single generator index, when the monomial has degree 1.
    pub fn as_generator(&self) -> Option<usize> {
        let mut it = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (it.next(), it.next()) {
            (Some((i, 1)), None) => Some(i),
            _ => None,
        }
    }

    /// Letters in order, e.g. `h^2 x` → `[h, h, x]`.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
            .collect()
    }

    pub fn parity(&self, parities: &[Parity]) -> Parity {
        let odd: u32 = self
            .0
            .iter()
            .zip(parities)
            .filter(|(_, p)| p.is_odd())
            .map(|(&e, _)| e as u32)
            .sum();
        Parity::from_bit((odd % 2) as u8)
    }

    fn last(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    fn with_delta(&self, i: usize, delta: i32) -> Self {
        let mut m = self.clone();
        m.0[i] = (m.0[i] as i32 + delta) as u16;
        m
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        parts.join("*")
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

type Terms = Arc<Vec<(PbwMonomial, Poly)>>;

/// Enveloping algebra of a Lie superalgebra in the PBW basis. Products of
/// normal monomials are memoized.
pub struct Pbw {
    algebra: LieSuperAlgebra,
    parities: Vec<Parity>,
    by_generator: Mutex<HashMap<(PbwMonomial, u16), Terms>>,
    by_monomial: Mutex<HashMap<(PbwMonomial, PbwMonomial), Terms>>,
}

impl fmt::Debug for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pbw({})", self.algebra.name())
    }
}

fn accumulate(acc: &mut HashMap<PbwMonomial, Poly>, m: PbwMonomial, c: Poly) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn sorted(acc: HashMap<PbwMonomial, Poly>) -> Terms {
    let mut v: Vec<_> = acc.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    Arc::new(v)
}

impl Pbw {
    pub fn new(algebra: LieSuperAlgebra) -> Arc<Self> {
        let parities = algebra.basis().parities().to_vec();
        Arc::new(Pbw {
            algebra,
            parities,
            by_generator: Mutex::new(HashMap::new()),
            by_monomial: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &LieSuperAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn names(&self) -> &[String] {
        self.algebra.basis().names()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.algebra.basis().index(name)
    }

    /// `m · e_g` in normal form.
    pub fn mul_generator(&self, m: &PbwMonomial, g: usize) -> Terms {
        let key = (m.clone(), g as u16);
        if let Some(t) = self.by_generator.lock().unwrap().get(&key) {
            return t.clone();
        }
        let out = self.mul_generator_uncached(m, g);
        self.by_generator.lock().unwrap().insert(key, out.clone());
        out
    }

    fn mul_generator_uncached(&self, m: &PbwMonomial, g: usize) -> Terms {
        let odd_g = self.parities[g].is_odd();
        let last = m.last();
        match last {
            Some(a) if a > g || (a == g && odd_g) => {
                let rest = m.with_delta(a, -1);
                let mut acc = HashMap::new();
                if a == g {
                    // e_a e_a = ½[e_a, e_a] for odd e_a
                    let half = rat(1, 2);
                    for (k, c) in self.algebra.bracket_basis(a, a) {
                        for (n, d) in self.mul_generator(&rest, *k).iter() {
                            accumulate(&mut acc, n.clone(), (c * d).scale(&half));
                        }
                    }
                } else {
                    // rest·e_a·e_g = ± rest·e_g·e_a + rest·[e_a, e_g]
                    let sign = self.parities[a].koszul(self.parities[g]);
                    for (n, c) in self.mul_generator(&rest, g).iter() {
                        for (n2, d) in self.mul_generator(n, a).iter() {
                            accumulate(&mut acc, n2.clone(), (c * d).scale(&Rational::from_integer(sign.into())));
                        }
                    }
                    for (k, c) in self.algebra.bracket_basis(a, g) {
                        for (n, d) in self.mul_generator(&rest, *k).iter() {
                            accumulate(&mut acc, n.clone(), c * d);
                        }
                    }
                }
                sorted(acc)
            }
            _ => Arc::new(vec![(m.with_delta(g, 1), Poly::one())]),
        }
    }

    /// `m · n` in normal form.
    pub fn mul_monomials(&self, m: &PbwMonomial, n: &PbwMonomial) -> Terms {
        if n.is_one() {
            return Arc::new(vec![(m.clone(), Poly::one())]);
        }
        if m.is_one() {
            return Arc::new(vec![(n.clone(), Poly::one())]);
        }
        let key = (m.clone(), n.clone());
        if let Some(t) = self.by_monomial.lock().unwrap().get(&key) {
            return t.clone();
        }
        let mut current: HashMap<PbwMonomial, Poly> = HashMap::new();
        current.insert(m.clone(), Poly::one());
        for g in n.word() {
            let mut next = HashMap::new();
            for (p, c) in current {
                for (q, d) in self.mul_generator(&p, g).iter() {
                    accumulate(&mut next, q.clone(), &c * d);
                }
            }
            current = next;
        }
        let out = sorted(current);
        self.by_monomial.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Normal form of a raw word of generator indices, via the memoized
    /// right-insertion engine.
    pub fn normalize_word(&self, word: &[usize]) -> Result<BTreeMap<PbwMonomial, Poly>> {
        let dim = self.dim();
        if let Some(&bad) = word.iter().find(|&&g| g >= dim) {
            return Err(Error::usage(format!("generator index {bad} out of range")));
        }
        let mut current: BTreeMap<PbwMonomial, Poly> = BTreeMap::new();
        current.insert(PbwMonomial::one(dim), Poly::one());
        for &g in word {
            let mut next = HashMap::new();
            for (p, c) in current {
                for (q, d) in self.mul_generator(&p, g).iter() {
                    accumulate(&mut next, q.clone(), &c * d);
                }
            }
            current = next.into_iter().collect();
        }
        Ok(current)
    }
}

/// Which adjacent pair a plain rewriting pass fixes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

/// Normal form by naive word rewriting with no memo: repeatedly replace the
/// chosen out-of-order pair `e_a e_b` (`a > b`) by `±e_b e_a + [e_a, e_b]`
/// and an odd square `e_a e_a` by `½[e_a, e_a]`. Used to cross-check the
/// memoized engine.
pub fn rewrite_word(
    algebra: &LieSuperAlgebra,
    word: &[usize],
    order: RewriteOrder,
) -> BTreeMap<PbwMonomial, Poly> {
    let parities = algebra.basis().parities();
    let dim = algebra.dim();
    let mut pending: Vec<(Vec<usize>, Poly)> = vec![(word.to_vec(), Poly::one())];
    let mut done: HashMap<PbwMonomial, Poly> = HashMap::new();
    while let Some((w, c)) = pending.pop() {
        let bad = |i: &usize| {
            let (a, b) = (w[*i], w[*i + 1]);
            a > b || (a == b && parities[a].is_odd())
        };
        let pos = match order {
            RewriteOrder::Leftmost => (0..w.len().saturating_sub(1)).find(bad),
            RewriteOrder::Rightmost => (0..w.len().saturating_sub(1)).rev().find(bad),
        };
        let Some(i) = pos else {
            let mut m = PbwMonomial::one(dim);
            for &g in &w {
                m.0[g] += 1;
            }
            accumulate(&mut done, m, c);
            continue;
        };
        let (a, b) = (w[i], w[i + 1]);
        let splice = |k: Option<usize>| {
            let mut v = w[..i].to_vec();
            v.extend(k);
            v.extend_from_slice(&w[i + 2..]);
            v
        };
        if a == b {
            for (k, d) in algebra.bracket_basis(a, a) {
                pending.push((splice(Some(*k)), (&c * d).scale(&rat(1, 2))));
            }
        } else {
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            let sign = parities[a].koszul(parities[b]);
            pending.push((swapped, c.scale(&Rational::from_integer(sign.into()))));
            for (k, d) in algebra.bracket_basis(a, b) {
                pending.push((splice(Some(*k)), &c * d));
            }
        }
    }
    done.into_iter().collect()
}

/// Element of the enveloping algebra with truncated scalar coefficients.
#[derive(Clone)]
pub struct UeaElement {
    pbw: Arc<Pbw>,
    order: TruncationOrder,
    terms: BTreeMap<PbwMonomial, Poly>,
}

impl PartialEq for UeaElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pbw, &other.pbw) && self.terms == other.terms
    }
}

impl UeaElement {
    pub fn zero(pbw: &Arc<Pbw>, order: &TruncationOrder) -> Self {
        Self {
            pbw: pbw.clone(),
            order: order.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(pbw: &Arc<Pbw>, order: &TruncationOrder, c: Poly) -> Self {
        let mut out = Self::zero(pbw, order);
        out.add_term(PbwMonomial::one(pbw.dim()), c);
        out
    }

    pub fn one(pbw: &Arc<Pbw>, order: &TruncationOrder) -> Self {
        Self::scalar(pbw, order, Poly::one())
    }

    pub fn generator(pbw: &Arc<Pbw>, order: &TruncationOrder, name: &str) -> Result<Self> {
        Ok(Self::basis_element(pbw, order, pbw.index(name)?))
    }

    pub fn basis_element(pbw: &Arc<Pbw>, order: &TruncationOrder, i: usize) -> Self {
        let mut out = Self::zero(pbw, order);
        out.add_term(PbwMonomial::generator(pbw.dim(), i), Poly::one());
        out
    }

    /// Normal form of the product of the given generators, left to right.
    pub fn from_word(pbw: &Arc<Pbw>, order: &TruncationOrder, word: &[usize]) -> Result<Self> {
        let mut out = Self::zero(pbw, order);
        for (m, c) in pbw.normalize_word(word)? {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn from_terms(
        pbw: &Arc<Pbw>,
        order: &TruncationOrder,
        terms: impl IntoIterator<Item = (PbwMonomial, Poly)>,
    ) -> Self {
        let mut out = Self::zero(pbw, order);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn pbw(&self) -> &Arc<Pbw> {
        &self.pbw
    }

    pub fn order(&self) -> &TruncationOrder {
        &self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Poly) {
        let c = c.truncate(&self.order);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Poly::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.pbw, &other.pbw) {
            Ok(())
        } else {
            Err(Error::usage("enveloping algebra elements over different algebras"))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, f: &Poly) -> Self {
        let order = self.order.clone();
        let mut out = self.map(|c| c.mul_truncated(f, &order));
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            pbw: self.pbw.clone(),
            order: self.order.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: HashMap<PbwMonomial, Poly> = HashMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let cd = c.mul_truncated(d, &self.order);
                if cd.is_zero() {
                    continue;
                }
                for (p, e) in self.pbw.mul_monomials(m, n).iter() {
                    accumulate(&mut acc, p.clone(), &cd * e);
                }
            }
        }
        Ok(Self::from_terms(&self.pbw, &self.order, acc))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(&self.pbw, &self.order);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Coefficient of the empty monomial (the counit).
    pub fn counit(&self) -> Poly {
        self.coeff(&PbwMonomial::one(self.pbw.dim()))
    }

    /// Every coefficient has positive degree in the graded parameters.
    pub fn is_deformation_positive(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.low_degree(&self.order.graded).is_some_and(|d| d >= 1))
    }

    pub fn exp_trunc(&self) -> Result<Self> {
        series_guard(self.is_deformation_positive(), "exp_trunc")?;
        power_series(self, |k| Rational::from_integer(factorial(k)).recip())
    }

    /// `log(1 + self)`.
    pub fn log_trunc(&self) -> Result<Self> {
        series_guard(self.is_deformation_positive(), "log_trunc")?;
        power_series(self, |k| {
            if k == 0 {
                Rational::from_integer(0.into())
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                rat(s, k as i64)
            }
        })
    }

    pub fn render(&self) -> String {
        render_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.render(self.pbw.names()), c)),
        )
    }
}

impl fmt::Debug for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn factorial(k: u32) -> num_bigint::BigInt {
    (1..=k).fold(num_bigint::BigInt::from(1), |a, b| a * b)
}

pub(crate) fn series_guard(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::unsupported(format!(
            "{what} needs an argument of positive deformation degree"
        )))
    }
}

/// Algebra elements that can be summed as power series.
pub(crate) trait SeriesRing: Sized + Clone {
    fn unit(&self) -> Self;
    fn times(&self, other: &Self) -> Result<Self>;
    fn plus(&self, other: &Self) -> Result<Self>;
    fn scaled(&self, c: &Rational) -> Self;
    fn vanishes(&self) -> bool;
}

impl SeriesRing for UeaElement {
    fn unit(&self) -> Self {
        Self::one(&self.pbw, &self.order)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(&Poly::constant(c.clone()))
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

/// `Σ_k coeff(k) u^k`, stopping when `u^k` truncates to zero.
pub(crate) fn power_series<T: SeriesRing>(u: &T, coeff: impl Fn(u32) -> Rational) -> Result<T> {
    let mut power = u.unit();
    let mut out = power.scaled(&coeff(0));
    let mut k = 0;
    loop {
        k += 1;
        power = power.times(u)?;
        if power.vanishes() {
            return Ok(out);
        }
        let c = coeff(k);
        if !num_traits::Zero::is_zero(&c) {
            out = out.plus(&power.scaled(&c))?;
        }
    }
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Poly)>) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let (neg, body) = match (c.terms().len(), c.to_string()) {
            (1, s) if s.starts_with('-') => (true, -c),
            _ => (false, c.clone()),
        };
        let coeff = if body.terms().len() > 1 {
            format!("({body})")
        } else {
            body.to_string()
        };
        let piece = match (body.is_one(), m == "1") {
            (true, _) => m,
            (false, true) => coeff,
            (false, false) => format!("{coeff}*{m}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{piece}") } else { piece };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&piece);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
