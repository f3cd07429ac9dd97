use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use smallvec::SmallVec;

use super::pbw::{power_series, render_terms, series_guard, Pbw, PbwMonomial, SeriesRing, UeaElement};
use crate::error::{Error, Result};
use crate::scalar::{Poly, Rational, TruncationOrder};

pub type Legs = SmallVec<[PbwMonomial; 3]>;

/// Element of `U^{⊗rank}`, rank 1 to 3, each leg in PBW normal form.
#[derive(Clone)]
pub struct TensorUea {
    pbw: Arc<Pbw>,
    order: TruncationOrder,
    rank: usize,
    terms: BTreeMap<Legs, Poly>,
}

impl PartialEq for TensorUea {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pbw, &other.pbw) && self.rank == other.rank && self.terms == other.terms
    }
}

fn add_into(acc: &mut HashMap<Legs, Poly>, legs: Legs, c: Poly) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(legs).or_insert_with(Poly::zero);
    *slot += &c;
}

impl TensorUea {
    pub fn zero(pbw: &Arc<Pbw>, order: &TruncationOrder, rank: usize) -> Self {
        Self {
            pbw: pbw.clone(),
            order: order.clone(),
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(pbw: &Arc<Pbw>, order: &TruncationOrder, rank: usize) -> Self {
        let mut out = Self::zero(pbw, order, rank);
        out.add_term(Self::unit_legs(pbw.dim(), rank), Poly::one());
        out
    }

    fn unit_legs(dim: usize, rank: usize) -> Legs {
        (0..rank).map(|_| PbwMonomial::one(dim)).collect()
    }

    /// `a_1 ⊗ … ⊗ a_k` for elements over one algebra.
    pub fn from_legs(factors: &[&UeaElement]) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::usage("empty tensor product"))?;
        let pbw = first.pbw().clone();
        let order = first.order().clone();
        if factors.iter().any(|f| !Arc::ptr_eq(f.pbw(), &pbw)) {
            return Err(Error::usage("tensor legs over different algebras"));
        }
        let mut partial: Vec<(Legs, Poly)> = vec![(Legs::new(), Poly::one())];
        for f in factors {
            let mut next = Vec::new();
            for (legs, c) in &partial {
                for (m, d) in f.terms() {
                    let cd = c.mul_truncated(d, &order);
                    if cd.is_zero() {
                        continue;
                    }
                    let mut l = legs.clone();
                    l.push(m.clone());
                    next.push((l, cd));
                }
            }
            partial = next;
        }
        let mut out = Self::zero(&pbw, &order, factors.len());
        for (l, c) in partial {
            out.add_term(l, c);
        }
        Ok(out)
    }

    pub fn pbw(&self) -> &Arc<Pbw> {
        &self.pbw
    }

    pub fn order(&self) -> &TruncationOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Legs, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, legs: &[PbwMonomial]) -> Poly {
        self.terms
            .get(&Legs::from_vec(legs.to_vec()))
            .cloned()
            .unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, legs: Legs, c: Poly) {
        debug_assert_eq!(legs.len(), self.rank);
        let c = c.truncate(&self.order);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(legs.clone()).or_insert_with(Poly::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&legs);
        }
    }

    fn from_map(&self, rank: usize, acc: HashMap<Legs, Poly>) -> Self {
        let mut out = Self::zero(&self.pbw, &self.order, rank);
        for (l, c) in acc {
            out.add_term(l, c);
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.pbw, &other.pbw) {
            return Err(Error::usage("tensors over different enveloping algebras"));
        }
        if self.rank != other.rank {
            return Err(Error::usage(format!(
                "tensor ranks differ: {} vs {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Poly::one())
    }

    pub fn scale(&self, f: &Poly) -> Self {
        let mut out = Self::zero(&self.pbw, &self.order, self.rank);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.mul_truncated(f, &self.order));
        }
        out
    }

    fn parity_bit(&self, m: &PbwMonomial) -> bool {
        m.parity(self.pbw.parities()).is_odd()
    }

    /// Product with Koszul signs: `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let right: Vec<(&Legs, &Poly)> = other.terms.iter().collect();
        let acc = self
            .terms
            .par_iter()
            .fold(HashMap::new, |mut acc, (la, ca)| {
                for (lb, cb) in &right {
                    let mut c = ca.mul_truncated(cb, &self.order);
                    if c.is_zero() {
                        continue;
                    }
                    // sign from moving each right leg past the later left legs
                    let mut odd = false;
                    for i in 0..self.rank {
                        if self.parity_bit(&lb[i]) {
                            for a in la.iter().skip(i + 1) {
                                odd ^= self.parity_bit(a);
                            }
                        }
                    }
                    if odd {
                        c = -c;
                    }
                    let products: Vec<_> = (0..self.rank)
                        .map(|i| self.pbw.mul_monomials(&la[i], &lb[i]))
                        .collect();
                    expand(&products, &c, &mut acc);
                }
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (l, c) in b {
                    add_into(&mut a, l, c);
                }
                a
            });
        Ok(self.from_map(self.rank, acc))
    }

    /// Swap of the two legs of a rank-2 tensor, with the Koszul sign.
    pub fn flip(&self) -> Result<Self> {
        if self.rank != 2 {
            return Err(Error::usage("flip needs a rank-2 tensor"));
        }
        let mut out = Self::zero(&self.pbw, &self.order, 2);
        for (l, c) in &self.terms {
            let sign = self.parity_bit(&l[0]) && self.parity_bit(&l[1]);
            let legs: Legs = [l[1].clone(), l[0].clone()].into_iter().collect();
            out.add_term(legs, if sign { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// Places a rank-2 tensor into legs `(i, j)` of a rank-3 tensor with
    /// unit in the remaining leg, e.g. `R_13` for `(0, 2)`.
    pub fn embed(&self, i: usize, j: usize) -> Result<Self> {
        if self.rank != 2 || i >= j || j > 2 {
            return Err(Error::usage("embed needs a rank-2 tensor and legs i < j ≤ 2"));
        }
        let dim = self.pbw.dim();
        let mut out = Self::zero(&self.pbw, &self.order, 3);
        for (l, c) in &self.terms {
            let mut legs = Self::unit_legs(dim, 3);
            legs[i] = l[0].clone();
            legs[j] = l[1].clone();
            out.add_term(legs, c.clone());
        }
        Ok(out)
    }

    /// `(id ⊗ … ⊗ Δ ⊗ … ⊗ id)` applied at leg `at`.
    pub fn coproduct_at(&self, at: usize) -> Result<Self> {
        if at >= self.rank || self.rank >= 3 {
            return Err(Error::usage("coproduct_at: leg out of range or rank too high"));
        }
        let mut acc = HashMap::new();
        for (l, c) in &self.terms {
            for (left, right, s) in coproduct_monomial(&l[at], self.pbw.parities()) {
                let mut legs = Legs::new();
                legs.extend(l[..at].iter().cloned());
                legs.push(left);
                legs.push(right);
                legs.extend(l[at + 1..].iter().cloned());
                add_into(&mut acc, legs, c.scale(&s));
            }
        }
        Ok(self.from_map(self.rank + 1, acc))
    }

    /// Applies the counit at leg `at`, dropping that leg.
    pub fn counit_at(&self, at: usize) -> Result<Self> {
        if at >= self.rank || self.rank < 2 {
            return Err(Error::usage("counit_at: leg out of range"));
        }
        let mut acc = HashMap::new();
        for (l, c) in &self.terms {
            if l[at].is_one() {
                let mut legs = l.clone();
                legs.remove(at);
                add_into(&mut acc, legs, c.clone());
            }
        }
        Ok(self.from_map(self.rank - 1, acc))
    }

    /// Rank-1 tensor viewed as an enveloping algebra element.
    pub fn into_element(&self) -> Result<UeaElement> {
        if self.rank != 1 {
            return Err(Error::usage("into_element needs rank 1"));
        }
        Ok(UeaElement::from_terms(
            &self.pbw,
            &self.order,
            self.terms.iter().map(|(l, c)| (l[0].clone(), c.clone())),
        ))
    }

    pub fn constant_part(&self) -> Poly {
        self.coeff(&Self::unit_legs(self.pbw.dim(), self.rank))
    }

    pub fn is_deformation_positive(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.low_degree(&self.order.graded).is_some_and(|d| d >= 1))
    }

    pub fn exp_trunc(&self) -> Result<Self> {
        series_guard(self.is_deformation_positive(), "exp_trunc")?;
        power_series(self, |k| {
            Rational::from_integer(super::pbw::factorial(k)).recip()
        })
    }

    /// `log(1 + self)`.
    pub fn log_trunc(&self) -> Result<Self> {
        series_guard(self.is_deformation_positive(), "log_trunc")?;
        power_series(self, |k| {
            if k == 0 {
                Rational::from_integer(0.into())
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                crate::scalar::rat(s, k as i64)
            }
        })
    }

    /// Inverse of an element with constant part 1, as the geometric series
    /// in the deformation-positive remainder.
    pub fn inverse(&self) -> Result<Self> {
        let unit = Self::one(&self.pbw, &self.order, self.rank);
        let rest = self.sub(&unit)?;
        if !rest.is_deformation_positive() {
            return Err(Error::unsupported(
                "inverse needs constant part 1⊗1 and a deformation-positive remainder",
            ));
        }
        power_series(&rest, |k| {
            Rational::from_integer(if k % 2 == 0 { 1 } else { -1 }.into())
        })
    }

    /// Part of total graded degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut out = Self::zero(&self.pbw, &self.order, self.rank);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.homogeneous_part(&self.order.graded, d));
        }
        out
    }

    /// Lowest graded degree carrying a nonzero term.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms
            .values()
            .filter_map(|c| c.low_degree(&self.order.graded))
            .min()
    }

    pub fn render(&self) -> String {
        let names = self.pbw.names();
        render_terms(self.terms.iter().map(|(l, c)| {
            let legs: Vec<String> = l.iter().map(|m| m.render(names)).collect();
            (format!("({})", legs.join(" (x) ")), c)
        }))
    }

    /// At most `limit` terms, one per line.
    pub fn render_lines(&self, limit: usize) -> Vec<String> {
        let names = self.pbw.names();
        let mut lines: Vec<String> = self
            .terms
            .iter()
            .take(limit)
            .map(|(l, c)| {
                let legs: Vec<String> = l.iter().map(|m| m.render(names)).collect();
                format!("{} * ({})", c.to_dsl_factor(), legs.join(" (x) "))
            })
            .collect();
        if self.terms.len() > limit {
            lines.push(format!("… {} more terms", self.terms.len() - limit));
        }
        lines
    }
}

fn expand(products: &[Arc<Vec<(PbwMonomial, Poly)>>], c: &Poly, acc: &mut HashMap<Legs, Poly>) {
    fn go(
        products: &[Arc<Vec<(PbwMonomial, Poly)>>],
        i: usize,
        legs: &mut Legs,
        c: &Poly,
        acc: &mut HashMap<Legs, Poly>,
    ) {
        if i == products.len() {
            add_into(acc, legs.clone(), c.clone());
            return;
        }
        for (m, d) in products[i].iter() {
            legs.push(m.clone());
            go(products, i + 1, legs, &(c * d), acc);
            legs.pop();
        }
    }
    go(products, 0, &mut Legs::new(), c, acc);
}

/// `Δ(m)` for a normal monomial: split each letter to the left or right
/// leg. Subwords of a normal word are normal, so only binomial weights and
/// the Koszul sign of odd letters passing each other remain.
pub fn coproduct_monomial(
    m: &PbwMonomial,
    parities: &[crate::lie::Parity],
) -> Vec<(PbwMonomial, PbwMonomial, Rational)> {
    let dim = m.dim();
    let mut out = vec![(PbwMonomial::one(dim), PbwMonomial::one(dim), Rational::from_integer(1.into()), 0u32)];
    // the last field counts odd letters already sent right
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let odd = parities[i].is_odd();
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for (l, r, c, right_odd) in &out {
            for k in 0..=e {
                // k copies go left, e−k go right
                let mut c = c * binomial(e, k);
                if odd && k == 1 && right_odd % 2 == 1 {
                    c = -c;
                }
                let mut l = l.clone();
                let mut r = r.clone();
                set_exp(&mut l, i, k);
                set_exp(&mut r, i, e - k);
                let sent_right = if odd { (e - k) as u32 } else { 0 };
                next.push((l, r, c, right_odd + sent_right));
            }
        }
        out = next;
    }
    out.into_iter().map(|(l, r, c, _)| (l, r, c)).collect()
}

fn set_exp(m: &mut PbwMonomial, i: usize, k: u16) {
    *m = {
        let mut ex: SmallVec<[u16; 16]> = SmallVec::from_slice(m.exponents());
        ex[i] = k;
        PbwMonomial::from_exponents(ex)
    };
}

fn binomial(n: u16, k: u16) -> Rational {
    let mut num = num_bigint::BigInt::from(1);
    for j in 0..k {
        num = num * (n - j) / (j + 1);
    }
    Rational::from_integer(num)
}

/// `Δ(u)` for an enveloping algebra element.
pub fn coproduct(u: &UeaElement) -> TensorUea {
    let mut out = TensorUea::zero(u.pbw(), u.order(), 2);
    for (m, c) in u.terms() {
        for (l, r, s) in coproduct_monomial(m, u.pbw().parities()) {
            out.add_term([l, r].into_iter().collect(), c.scale(&s));
        }
    }
    out
}

impl SeriesRing for TensorUea {
    fn unit(&self) -> Self {
        Self::one(&self.pbw, &self.order, self.rank)
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

impl fmt::Debug for TensorUea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
