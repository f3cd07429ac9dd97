use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use smallvec::SmallVec;

use super::basis::{GradedBasis, Parity};
use crate::error::{Error, Result};
use crate::scalar::{rat, Assignment, Poly, Rational};

/// Basis-index tuple of one tensor term.
pub type Slots = SmallVec<[usize; 3]>;

pub fn slots(ix: &[usize]) -> Slots {
    SmallVec::from_slice(ix)
}

/// Sparse element of `V^{⊗d}` for a graded basis `V`, `d ∈ {1, 2, 3}`.
/// Coefficients are parameter polynomials (even, central).
#[derive(Clone)]
pub struct TensorElement {
    basis: Arc<GradedBasis>,
    degree: usize,
    coeffs: BTreeMap<Slots, Poly>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && *self.basis == *other.basis && self.coeffs == other.coeffs
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(basis: Arc<GradedBasis>, degree: usize) -> Self {
        Self {
            basis,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_vector(basis: Arc<GradedBasis>, i: usize) -> Self {
        let mut t = Self::zero(basis, 1);
        t.add_term(slots(&[i]), Poly::one());
        t
    }

    pub fn from_terms(
        basis: Arc<GradedBasis>,
        degree: usize,
        terms: impl IntoIterator<Item = (Slots, Poly)>,
    ) -> Self {
        let mut t = Self::zero(basis, degree);
        for (s, c) in terms {
            t.add_term(s, c);
        }
        t
    }

    /// Degree-1 element from `(index, coefficient)` pairs.
    pub fn vector(basis: Arc<GradedBasis>, terms: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        Self::from_terms(basis, 1, terms.into_iter().map(|(i, c)| (slots(&[i]), c)))
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slots, &Poly)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, ix: &[usize]) -> Poly {
        self.coeffs.get(ix).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, s: Slots, c: Poly) {
        debug_assert_eq!(s.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn term_parity(&self, s: &[usize]) -> Parity {
        s.iter()
            .fold(Parity::Even, |acc, &i| acc + self.basis.parity(i))
    }

    /// True when every term has even total parity.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .keys()
            .all(|s| self.term_parity(s) == Parity::Even)
    }

    /// Parity of a homogeneous element; `None` if mixed (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.coeffs.keys().map(|s| self.term_parity(s));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn same_space(&self, other: &Self) -> Result<()> {
        if *self.basis != *other.basis {
            return Err(Error::usage("tensors live over different bases"));
        }
        if self.degree != other.degree {
            return Err(Error::usage(format!(
                "tensor degrees differ ({} vs {})",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Poly) {
        for (s, c) in &other.coeffs {
            self.add_term(s.clone(), c * factor);
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, factor: &Poly) -> Self {
        self.map_coeffs(|c| c * factor)
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(factor))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::from_terms(
            self.basis.clone(),
            self.degree,
            self.coeffs.iter().map(|(s, c)| (s.clone(), f(c))),
        )
    }

    pub fn substitute(&self, a: &Assignment) -> Self {
        self.map_coeffs(|c| c.substitute(a))
    }

    /// Plain `a ⊗ b`; parameters are even so no sign arises.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if *self.basis != *other.basis {
            return Err(Error::usage("tensors live over different bases"));
        }
        let mut out = Self::zero(self.basis.clone(), self.degree + other.degree);
        for (sa, ca) in &self.coeffs {
            for (sb, cb) in &other.coeffs {
                let mut s = sa.clone();
                s.extend_from_slice(sb);
                out.add_term(s, ca * cb);
            }
        }
        Ok(out)
    }

    /// Reorders tensor legs: leg `k` of the result is leg `perm[k]` of `self`,
    /// with the Koszul sign of every transposed pair of odd factors.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.degree);
        let mut out = Self::zero(self.basis.clone(), self.degree);
        for (s, c) in &self.coeffs {
            let mut sign = 1;
            for a in 0..perm.len() {
                for b in a + 1..perm.len() {
                    if perm[a] > perm[b] {
                        sign *= self
                            .basis
                            .parity(s[perm[a]])
                            .koszul(self.basis.parity(s[perm[b]]));
                    }
                }
            }
            let ns: Slots = perm.iter().map(|&k| s[k]).collect();
            out.add_term(ns, if sign < 0 { -c } else { c.clone() });
        }
        out
    }

    /// Graded flip `a⊗b ↦ (−1)^{|a||b|} b⊗a` on degree 2.
    pub fn flip(&self) -> Self {
        self.permute(&[1, 0])
    }

    pub fn symmetric_part(&self) -> Self {
        let t = self.try_add(&self.flip()).expect("same space");
        t.scale_rational(&rat(1, 2))
    }

    pub fn antisymmetric_part(&self) -> Self {
        let t = self.try_sub(&self.flip()).expect("same space");
        t.scale_rational(&rat(1, 2))
    }

    /// Inserts a degree-1 element into leg `slot` of each term, i.e. the
    /// linear map `a⊗b ↦ f(a)⊗b` (or the leg analogue) with `f` given per
    /// basis index. No sign is applied; callers add Koszul factors.
    pub(crate) fn map_leg(
        &self,
        slot: usize,
        mut f: impl FnMut(usize) -> Vec<(usize, Poly)>,
        sign: impl Fn(&Slots) -> i64,
    ) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.degree);
        for (s, c) in &self.coeffs {
            let sg = sign(s);
            for (k, v) in f(s[slot]) {
                let mut ns = s.clone();
                ns[slot] = k;
                let coeff = c * &v;
                out.add_term(ns, if sg < 0 { -coeff } else { coeff });
            }
        }
        out
    }

    fn render_with(&self, tensor_op: &str, dsl: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (s, c) in &self.coeffs {
            let body = s
                .iter()
                .map(|&i| self.basis.name(i).to_string())
                .collect::<Vec<_>>()
                .join(tensor_op);
            let coeff = if dsl {
                c.to_dsl_factor()
            } else {
                let t = c.to_string();
                if c.terms().len() > 1 {
                    format!("({t})")
                } else {
                    t
                }
            };
            let piece = if c.is_one() {
                body
            } else if c.as_constant() == Some(-Rational::one()) {
                format!("-{body}")
            } else {
                format!("{coeff}*{body}")
            };
            parts.push(piece);
        }
        let mut out = String::new();
        for (i, p) in parts.into_iter().enumerate() {
            if i == 0 {
                out.push_str(&p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
        out
    }

    /// Workbench-file syntax, e.g. `1/2*h * H12 (x) H12 + ...`.
    pub fn to_dsl(&self) -> String {
        // `(x)` is a reserved token; spaces keep it from touching names.
        let s = self.render_with(" (x) ", true);
        s.replace("*", " * ").replace(" *  * ", "**")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("⊗", false))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement[{}]({self})", self.degree)
    }
}

/// `x ⊗ y − (−1)^{|x||y|} y ⊗ x`, no ½.
pub fn wedge(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    if x.degree() != 1 || y.degree() != 1 {
        return Err(Error::usage("wedge takes two degree-1 tensors"));
    }
    let xy = x.tensor(y)?;
    xy.try_sub(&xy.flip())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osp_like() -> Arc<GradedBasis> {
        GradedBasis::new([("h", Parity::Even), ("vp", Parity::Odd), ("vm", Parity::Odd)])
            .unwrap()
            .shared()
    }

    #[test]
    fn wedge_examples() {
        let b = GradedBasis::even(["h", "x"]).unwrap().shared();
        let h = TensorElement::basis_vector(b.clone(), 0);
        let x = TensorElement::basis_vector(b.clone(), 1);
        let w = wedge(&h, &x).unwrap();
        assert_eq!(w.coeff(&[0, 1]), Poly::one());
        assert_eq!(w.coeff(&[1, 0]), Poly::from_int(-1));
        assert_eq!(w.len(), 2);
        assert!(wedge(&x, &x).unwrap().is_zero());

        let ob = osp_like();
        let vp = TensorElement::basis_vector(ob.clone(), 1);
        let w = wedge(&vp, &vp).unwrap();
        assert_eq!(w.coeff(&[1, 1]), Poly::from_int(2));
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn graded_antisymmetry_of_wedge() {
        let ob = osp_like();
        for i in 0..3 {
            for j in 0..3 {
                let x = TensorElement::basis_vector(ob.clone(), i);
                let y = TensorElement::basis_vector(ob.clone(), j);
                let sign = ob.parity(i).koszul(ob.parity(j));
                let lhs = wedge(&x, &y).unwrap();
                let rhs = wedge(&y, &x).unwrap().scale(&Poly::from_int(-sign));
                assert_eq!(lhs, rhs, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn permute_signs() {
        let ob = osp_like();
        let t = TensorElement::from_terms(ob.clone(), 3, [(slots(&[1, 2, 0]), Poly::one())]);
        // the even leg moves past both odd legs: no sign
        let c = t.permute(&[2, 0, 1]);
        assert_eq!(c.coeff(&[0, 1, 2]), Poly::one());
        let s = t.permute(&[1, 0, 2]);
        assert_eq!(s.coeff(&[2, 1, 0]), Poly::from_int(-1));
    }

    #[test]
    fn mixed_degree_rejected() {
        let b = GradedBasis::even(["a"]).unwrap().shared();
        let a1 = TensorElement::basis_vector(b.clone(), 0);
        let a2 = a1.tensor(&a1).unwrap();
        assert!(a1.try_add(&a2).is_err());
    }
}
