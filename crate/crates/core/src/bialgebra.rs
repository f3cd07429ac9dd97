//! Classical r-matrices, coboundary cobrackets and Lie bialgebra checks.

use crate::error::{Error, Result};
use crate::lie::{lincomb_from, slots, BracketTable, LieSuperAlgebra, Parity, TensorElement};
use crate::scalar::{Assignment, Param, Poly, Rational};

fn check_over(a: &LieSuperAlgebra, t: &TensorElement, degree: usize) -> Result<()> {
    if **t.basis() != **a.basis() {
        return Err(Error::usage(format!(
            "tensor is not defined over the basis of {}",
            a.name()
        )));
    }
    if t.degree() != degree {
        return Err(Error::usage(format!(
            "expected a degree-{degree} tensor, got degree {}",
            t.degree()
        )));
    }
    Ok(())
}

/// `[[r,r]] = [r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃]` for an even `r = Σ a_α⊗b_α`:
///
/// `Σ (−1)^{|b_α||a_β|}[a_α,a_β]⊗b_α⊗b_β + a_α⊗[b_α,a_β]⊗b_β
///  + (−1)^{|b_α||a_β|} a_α⊗a_β⊗[b_α,b_β]`.
pub fn schouten(a: &LieSuperAlgebra, r: &TensorElement) -> Result<TensorElement> {
    check_over(a, r, 2)?;
    if !r.is_even() {
        return Err(Error::unsupported(
            "Schouten bracket of an r-matrix with odd components",
        ));
    }
    let b = a.basis();
    let terms: Vec<_> = r.terms().map(|(s, c)| (s[0], s[1], c.clone())).collect();
    let mut out = TensorElement::zero(b.clone(), 3);
    for (a1, b1, c1) in &terms {
        for (a2, b2, c2) in &terms {
            let c = c1 * c2;
            let sign = b.parity(*b1).koszul(b.parity(*a2));
            let signed = |v: &Poly, s: i64| if s < 0 { -(&c * v) } else { &c * v };
            for (k, v) in a.bracket_basis(*a1, *a2) {
                out.add_term(slots(&[*k, *b1, *b2]), signed(v, sign));
            }
            for (k, v) in a.bracket_basis(*b1, *a2) {
                out.add_term(slots(&[*a1, *k, *b2]), signed(v, 1));
            }
            for (k, v) in a.bracket_basis(*b1, *b2) {
                out.add_term(slots(&[*a1, *a2, *k]), signed(v, sign));
            }
        }
    }
    Ok(out)
}

/// Result of an ad-invariance scan: the first basis element moving `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub witness: Option<(String, TensorElement)>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn check_invariant(a: &LieSuperAlgebra, t: &TensorElement) -> Result<InvarianceReport> {
    if **t.basis() != **a.basis() {
        return Err(Error::usage("tensor and algebra have different bases"));
    }
    for x in 0..a.dim() {
        let v = a.ad_on_tensor(x, t);
        if !v.is_zero() {
            return Ok(InvarianceReport {
                witness: Some((a.basis().name(x).to_string(), v)),
            });
        }
    }
    Ok(InvarianceReport { witness: None })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CybeReport {
    pub schouten: TensorElement,
}

impl CybeReport {
    pub fn passed(&self) -> bool {
        self.schouten.is_zero()
    }
}

pub fn check_cybe(a: &LieSuperAlgebra, r: &TensorElement) -> Result<CybeReport> {
    Ok(CybeReport {
        schouten: schouten(a, r)?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct McybeReport {
    pub symmetric_part: TensorElement,
    pub symmetric_invariance: InvarianceReport,
    pub schouten: TensorElement,
    pub schouten_invariance: InvarianceReport,
}

impl McybeReport {
    pub fn passed(&self) -> bool {
        self.symmetric_invariance.passed() && self.schouten_invariance.passed()
    }
}

/// Symmetric part invariant and Schouten bracket invariant.
pub fn check_mcybe(a: &LieSuperAlgebra, r: &TensorElement) -> Result<McybeReport> {
    let sch = schouten(a, r)?;
    let sym = r.symmetric_part();
    Ok(McybeReport {
        symmetric_invariance: check_invariant(a, &sym)?,
        schouten_invariance: check_invariant(a, &sch)?,
        symmetric_part: sym,
        schouten: sch,
    })
}

/// A linear map `δ: g → g⊗g` given on basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Cobracket {
    algebra: LieSuperAlgebra,
    delta: Vec<TensorElement>,
}

impl Cobracket {
    pub fn new(algebra: LieSuperAlgebra, delta: Vec<TensorElement>) -> Result<Self> {
        if delta.len() != algebra.dim() {
            return Err(Error::definition(format!(
                "cobracket needs {} values, got {}",
                algebra.dim(),
                delta.len()
            )));
        }
        for d in &delta {
            check_over(&algebra, d, 2)?;
        }
        Ok(Self { algebra, delta })
    }

    pub fn zero(algebra: LieSuperAlgebra) -> Self {
        let delta = (0..algebra.dim())
            .map(|_| TensorElement::zero(algebra.basis().clone(), 2))
            .collect();
        Self { algebra, delta }
    }

    pub fn algebra(&self) -> &LieSuperAlgebra {
        &self.algebra
    }

    pub fn value(&self, i: usize) -> &TensorElement {
        &self.delta[i]
    }

    pub fn values(&self) -> &[TensorElement] {
        &self.delta
    }

    pub fn apply(&self, v: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.algebra.basis().clone(), 2);
        for (s, c) in v.terms() {
            out.add_scaled(&self.delta[s[0]], c);
        }
        out
    }

    pub fn with_value(mut self, i: usize, value: TensorElement) -> Self {
        self.delta[i] = value;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.delta.iter().all(TensorElement::is_zero)
    }

    /// `a·self + b·other` on the same algebra.
    pub fn combine(&self, a: &Poly, other: &Self, b: &Poly) -> Result<Self> {
        let delta = self
            .delta
            .iter()
            .zip(&other.delta)
            .map(|(x, y)| x.scale(a).try_add(&y.scale(b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            algebra: self.algebra.clone(),
            delta,
        })
    }

    pub fn render_lines(&self) -> Vec<String> {
        let b = self.algebra.basis();
        (0..b.dim())
            .map(|i| format!("delta({}) = {}", b.name(i), self.delta[i]))
            .collect()
    }
}

/// `δ(x) = (ad_x⊗1 + 1⊗ad_x) r`.
pub fn cobracket_from_r(a: &LieSuperAlgebra, r: &TensorElement) -> Result<Cobracket> {
    check_over(a, r, 2)?;
    let delta = (0..a.dim()).map(|x| a.ad_on_tensor(x, r)).collect();
    Cobracket::new(a.clone(), delta)
}

/// A Lie algebra with a cobracket whose axioms are checked, not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct LieBialgebra {
    pub cobracket: Cobracket,
}

impl LieBialgebra {
    pub fn new(cobracket: Cobracket) -> Self {
        Self { cobracket }
    }

    pub fn from_r(a: &LieSuperAlgebra, r: &TensorElement) -> Result<Self> {
        Ok(Self::new(cobracket_from_r(a, r)?))
    }

    pub fn algebra(&self) -> &LieSuperAlgebra {
        self.cobracket.algebra()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    /// Names of the failing basis arguments and the nonzero residual.
    pub witness: Option<(Vec<String>, TensorElement)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// `δ([x,y]) = x·δ(y) − (−1)^{|x||y|} y·δ(x)` for all basis pairs.
pub fn check_cocycle_compat(bi: &LieBialgebra) -> AxiomReport {
    let a = bi.algebra();
    let d = &bi.cobracket;
    let b = a.basis();
    let n = a.dim();
    for i in 0..n {
        for j in i..n {
            let lhs = d.apply(&a.table().value(i, j));
            let mut rhs = a.ad_on_tensor(i, d.value(j));
            let sign = b.parity(i).koszul(b.parity(j));
            rhs.add_scaled(&a.ad_on_tensor(j, d.value(i)), &Poly::from_int(-sign));
            let res = lhs.try_sub(&rhs).expect("same space");
            if !res.is_zero() {
                return AxiomReport {
                    witness: Some((vec![b.name(i).into(), b.name(j).into()], res)),
                };
            }
        }
    }
    AxiomReport { witness: None }
}

/// `(1 + τ + τ²)(δ⊗id)δ = 0` with `τ` the graded cyclic permutation.
pub fn check_cojacobi(bi: &LieBialgebra) -> AxiomReport {
    let a = bi.algebra();
    let d = &bi.cobracket;
    let b = a.basis();
    for x in 0..a.dim() {
        let mut dd = TensorElement::zero(b.clone(), 3);
        for (s, c) in d.value(x).terms() {
            let left = d.value(s[0]);
            let right = TensorElement::basis_vector(b.clone(), s[1]);
            dd.add_scaled(&left.tensor(&right).expect("same basis"), c);
        }
        let cyc = dd
            .try_add(&dd.permute(&[2, 0, 1]))
            .and_then(|t| t.try_add(&dd.permute(&[1, 2, 0])))
            .expect("same space");
        if !cyc.is_zero() {
            return AxiomReport {
                witness: Some((vec![b.name(x).into()], cyc)),
            };
        }
    }
    AxiomReport { witness: None }
}

/// Bracket on the dual basis: `[ê_i, ê_j] = Σ_k δ(e_k)^{ij} ê_k`.
pub fn dual_algebra(bi: &LieBialgebra) -> Result<LieSuperAlgebra> {
    let a = bi.algebra();
    let dual = a.basis().dual().shared();
    let n = a.dim();
    for k in 0..n {
        let v = bi.cobracket.value(k);
        let flipped = v.flip();
        if flipped != v.neg() {
            return Err(Error::Structural(format!(
                "delta({}) is not graded antisymmetric",
                a.basis().name(k)
            )));
        }
        if let Some(p) = v.parity() {
            if p != a.basis().parity(k) {
                return Err(Error::Structural(format!(
                    "delta({}) changes parity",
                    a.basis().name(k)
                )));
            }
        }
    }
    let mut table = BracketTable::new(dual, Parity::Even);
    let pairs: Vec<_> = table.independent_pairs().collect();
    for (i, j) in pairs {
        let value = lincomb_from(
            (0..n).map(|k| (k, bi.cobracket.value(k).coeff(&[i, j]))),
        );
        table.set(i, j, value)?;
    }
    LieSuperAlgebra::from_table(format!("{}*", a.name()), table)
}

/// Matrix of `ad_z` as images of basis vectors; errors if `ad_z` is not
/// nilpotent within `dim` steps.
fn nilpotent_ad(a: &LieSuperAlgebra, z: usize) -> Result<Vec<Vec<TensorElement>>> {
    let n = a.dim();
    // powers[k][i] = ad_z^k(e_i)
    let mut powers = vec![(0..n).map(|i| a.e(i)).collect::<Vec<_>>()];
    loop {
        let last = powers.last().expect("nonempty");
        if last.iter().all(TensorElement::is_zero) {
            powers.pop();
            return Ok(powers);
        }
        if powers.len() > n {
            return Err(Error::unsupported(format!(
                "ad_{} is not nilpotent",
                a.basis().name(z)
            )));
        }
        let next = last
            .iter()
            .map(|v| a.bracket(&a.e(z), v).expect("same basis"))
            .collect();
        powers.push(next);
    }
}

/// `(exp(ξ ad_z) ⊗ exp(ξ ad_z)) r`, a polynomial in `ξ`.
pub fn adjoint_twist_r(
    a: &LieSuperAlgebra,
    r: &TensorElement,
    z: usize,
    xi: &Poly,
) -> Result<TensorElement> {
    check_over(a, r, 2)?;
    if a.basis().parity(z).is_odd() {
        return Err(Error::unsupported("adjoint twist by an odd generator"));
    }
    let powers = nilpotent_ad(a, z)?;
    let n = a.dim();
    // exp(ξ ad_z)(e_i)
    let mut factorial = Rational::from_integer(1.into());
    let mut xi_pow = Poly::one();
    let mut exp_images: Vec<TensorElement> =
        (0..n).map(|_| TensorElement::zero(a.basis().clone(), 1)).collect();
    for (k, level) in powers.iter().enumerate() {
        if k > 0 {
            factorial *= Rational::from_integer((k as i64).into());
            xi_pow = &xi_pow * xi;
        }
        let c = xi_pow.scale(&(Rational::from_integer(1.into()) / factorial.clone()));
        for (img, v) in exp_images.iter_mut().zip(level) {
            img.add_scaled(v, &c);
        }
    }
    let mut out = r.clone();
    for slot in 0..2 {
        out = out.map_leg(
            slot,
            |i| exp_images[i].terms().map(|(s, c)| (s[0], c.clone())).collect(),
            |_| 1,
        );
    }
    Ok(out)
}

/// `r_full = r1 + r2` exactly.
pub fn decompose_check(
    r_full: &TensorElement,
    r1: &TensorElement,
    r2: &TensorElement,
) -> Result<bool> {
    Ok(*r_full == r1.try_add(r2)?)
}

/// Specialization `param ↦ 0` in every coefficient.
pub fn limit_r(r: &TensorElement, param: &str) -> TensorElement {
    r.substitute(&Assignment::new([(param, Rational::from_integer(0.into()))]))
}

/// The scalar `c` with `a = c·b`, if one exists (exact division per term).
pub fn proportionality(a: &TensorElement, b: &TensorElement) -> Option<Poly> {
    if b.is_zero() {
        return a.is_zero().then(Poly::zero);
    }
    let (s, cb) = b.terms().next()?;
    let ca = a.coeff(s);
    let c = ca.exact_div(cb)?;
    (b.scale(&c) == *a).then_some(c)
}

/// Coefficient of `param^k` in every slot.
pub fn coefficient_tensor(t: &TensorElement, param: &str, k: u32) -> TensorElement {
    let p = Param::new(param);
    t.map_coeffs(|c| c.coefficient_of(p, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::sl::{make_borel, make_r_borel, make_rdj, make_rjordan, make_sl};
    use crate::lie::wedge;

    #[test]
    fn borel_cobracket() {
        let a = make_borel();
        let r = make_r_borel();
        let d = cobracket_from_r(&a, &r).unwrap();
        let hx = wedge(&a.e(0), &a.e(1)).unwrap();
        assert_eq!(*d.value(0), hx.scale(&Poly::from_int(2)));
        assert!(d.value(1).is_zero());
        assert!(check_cybe(&a, &r).unwrap().passed());
        let dual = dual_algebra(&LieBialgebra::new(d)).unwrap();
        assert_eq!(
            dual.bracket(&dual.e(0), &dual.e(1)).unwrap(),
            dual.e(0).scale(&Poly::from_int(2))
        );
    }

    #[test]
    fn every_cobracket_on_borel_is_a_cocycle() {
        // g∧g is spanned by h∧x and Λ³g = 0, so no corruption can fail
        let a = make_borel();
        let d = cobracket_from_r(&a, &make_r_borel()).unwrap();
        let xh = wedge(&a.e(1), &a.e(0)).unwrap();
        let bent = LieBialgebra::new(d.clone().with_value(1, d.value(1).try_add(&xh).unwrap()));
        assert!(check_cocycle_compat(&bent).passed());
        assert!(check_cojacobi(&bent).passed());
    }

    #[test]
    fn corrupted_cobracket_fails_compat() {
        let a = make_sl(2).unwrap();
        let d = cobracket_from_r(&a, &make_rdj(2, &Poly::param("h")).unwrap()).unwrap();
        let e = a.basis().index("E12").unwrap();
        let he = wedge(&a.e(0), &a.e(e)).unwrap();
        let bad = d.clone().with_value(e, d.value(e).try_add(&he).unwrap());
        let rep = check_cocycle_compat(&LieBialgebra::new(bad));
        let (pair, _) = rep.witness.expect("compat must fail");
        assert_eq!(pair, vec!["E12".to_string(), "E21".to_string()]);
    }

    #[test]
    fn schouten_matches_leg_expansion_on_sl3() {
        // independent route for even algebras: insert brackets into legs of
        // r⊗r directly
        let a = make_sl(3).unwrap();
        let r = make_rdj(3, &Poly::param("h")).unwrap();
        let rr = r.tensor(&r).unwrap();
        let b = a.basis().clone();
        let mut expect = TensorElement::zero(b.clone(), 3);
        for (s, c) in rr.terms() {
            let (a1, b1, a2, b2) = (s[0], s[1], s[2], s[3]);
            for (k, v) in a.bracket_basis(a1, a2) {
                expect.add_term(slots(&[*k, b1, b2]), c * v);
            }
            for (k, v) in a.bracket_basis(b1, a2) {
                expect.add_term(slots(&[a1, *k, b2]), c * v);
            }
            for (k, v) in a.bracket_basis(b1, b2) {
                expect.add_term(slots(&[a1, a2, *k]), c * v);
            }
        }
        assert_eq!(schouten(&a, &r).unwrap(), expect);
    }

    #[test]
    fn central_twist_is_identity() {
        let b = crate::lie::GradedBasis::even(["z", "w"]).unwrap().shared();
        let a = LieSuperAlgebra::abelian("ab", b);
        let r = wedge(&a.e(0), &a.e(1)).unwrap();
        assert_eq!(adjoint_twist_r(&a, &r, 0, &Poly::param("xi")).unwrap(), r);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let a = make_borel();
        let r = make_r_borel();
        assert!(matches!(
            adjoint_twist_r(&a, &r, 0, &Poly::param("xi")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn jordanian_is_proportional_to_twist_difference() {
        let a = make_sl(2).unwrap();
        let h = Poly::param("h");
        let xi = Poly::param("xi");
        let r = make_rdj(2, &h).unwrap();
        let z = a.basis().index("E12").unwrap();
        let diff = adjoint_twist_r(&a, &r, z, &xi)
            .unwrap()
            .try_sub(&r)
            .unwrap();
        let c = proportionality(&diff, &make_rjordan(2, &xi).unwrap()).unwrap();
        assert_eq!(c, -&h);
    }
}
