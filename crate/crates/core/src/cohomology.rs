//! Chevalley–Eilenberg cochains with adjoint coefficients in low degree,
//! the coboundary solver and H² dimensions.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bialgebra::Cobracket;
use crate::error::{Error, Result};
use crate::lie::{
    lincomb_from, lincomb_of, slots, BracketTable, GradedBasis, LieSuperAlgebra, LinComb, Parity,
    TensorElement,
};
use crate::linalg::{self, PolyMatrix, RankResult, Solution};
use crate::scalar::Poly;

/// Linear map `V → V` of definite parity, given on basis vectors.
#[derive(Clone, PartialEq)]
pub struct Cochain1 {
    basis: Arc<GradedBasis>,
    parity: Parity,
    images: Vec<LinComb>,
}

impl fmt::Debug for Cochain1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain1[{}] {{ ", self.parity)?;
        for line in self.render_lines() {
            write!(f, "{line}; ")?;
        }
        write!(f, "}}")
    }
}

impl Cochain1 {
    pub fn new(basis: Arc<GradedBasis>, parity: Parity, images: Vec<LinComb>) -> Result<Self> {
        if images.len() != basis.dim() {
            return Err(Error::definition(format!(
                "1-cochain needs {} images, got {}",
                basis.dim(),
                images.len()
            )));
        }
        let images: Vec<LinComb> = images.into_iter().map(lincomb_from).collect();
        for (i, img) in images.iter().enumerate() {
            for (k, _) in img {
                if basis.parity(*k) != basis.parity(i) + parity {
                    return Err(Error::definition(format!(
                        "1-cochain of parity {parity} cannot send {} to {}",
                        basis.name(i),
                        basis.name(*k)
                    )));
                }
            }
        }
        Ok(Self {
            basis,
            parity,
            images,
        })
    }

    pub fn zero(basis: Arc<GradedBasis>, parity: Parity) -> Self {
        let n = basis.dim();
        Self {
            basis,
            parity,
            images: vec![Vec::new(); n],
        }
    }

    pub fn identity(basis: Arc<GradedBasis>) -> Self {
        let images = (0..basis.dim()).map(|i| vec![(i, Poly::one())]).collect();
        Self {
            basis,
            parity: Parity::Even,
            images,
        }
    }

    /// Inner derivation `ad_z` for a basis element `z`.
    pub fn ad(algebra: &LieSuperAlgebra, z: usize) -> Self {
        let images = (0..algebra.dim())
            .map(|i| algebra.bracket_basis(z, i).to_vec())
            .collect();
        Self {
            basis: algebra.basis().clone(),
            parity: algebra.basis().parity(z),
            images,
        }
    }

    /// Elementary map `e_a ↦ e_b`.
    pub fn elementary(basis: Arc<GradedBasis>, a: usize, b: usize) -> Self {
        let parity = basis.parity(a) + basis.parity(b);
        let mut c = Self::zero(basis, parity);
        c.images[a] = vec![(b, Poly::one())];
        c
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn images(&self) -> &[LinComb] {
        &self.images
    }

    pub fn image(&self, i: usize) -> TensorElement {
        TensorElement::vector(self.basis.clone(), self.images[i].iter().cloned())
    }

    pub fn apply(&self, v: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.basis.clone(), 1);
        for (s, c) in v.terms() {
            out.add_scaled(&self.image(s[0]), c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let images = self
            .images
            .iter()
            .map(|img| lincomb_from(img.iter().map(|(k, c)| (*k, f(c)))))
            .collect();
        Self {
            basis: self.basis.clone(),
            parity: self.parity,
            images,
        }
    }

    pub fn scale(&self, c: &Poly) -> Self {
        self.map_coeffs(|v| v * c)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Vec::is_empty)
    }

    /// `name -> image` lines, zero images included.
    pub fn render_lines(&self) -> Vec<String> {
        (0..self.basis.dim())
            .map(|i| format!("{} -> {}", self.basis.name(i), self.image(i)))
            .collect()
    }
}

/// Graded-alternating bilinear map `V × V → V`.
#[derive(Clone, PartialEq)]
pub struct Cochain2 {
    table: BracketTable,
}

impl fmt::Debug for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain2 {{ {} }}", self.table.render_lines(false).join("; "))
    }
}

impl Cochain2 {
    pub fn zero(basis: Arc<GradedBasis>, parity: Parity) -> Self {
        Self {
            table: BracketTable::new(basis, parity),
        }
    }

    pub fn from_table(table: BracketTable) -> Self {
        Self { table }
    }

    pub fn from_algebra(a: &LieSuperAlgebra) -> Self {
        Self {
            table: a.table().clone(),
        }
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.table.basis()
    }

    pub fn parity(&self) -> Parity {
        self.table.parity()
    }

    pub fn value(&self, i: usize, j: usize) -> TensorElement {
        self.table.value(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self {
            table: self.table.map_coeffs(|v| v * c),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            table: self
                .table
                .combine(&Poly::one(), &other.table, &Poly::from_int(-1))?,
        })
    }

    pub fn into_algebra(self, name: impl Into<String>) -> Result<LieSuperAlgebra> {
        LieSuperAlgebra::from_table(name, self.table)
    }

    pub fn render_lines(&self) -> Vec<String> {
        self.table.render_lines(false)
    }
}

fn same_basis(a: &LieSuperAlgebra, b: &Arc<GradedBasis>, what: &str) -> Result<()> {
    if **a.basis() != **b {
        return Err(Error::usage(format!(
            "{what} is not defined over the basis of {}",
            a.name()
        )));
    }
    Ok(())
}

fn sign_poly(s: i64) -> Poly {
    Poly::from_int(s)
}

/// `(d1ψ)(x,y) = (−1)^{|x||ψ|}[x,ψy] − (−1)^{|y|(|x|+|ψ|)}[y,ψx] − ψ([x,y])`.
pub fn d1(a: &LieSuperAlgebra, psi: &Cochain1) -> Result<Cochain2> {
    same_basis(a, psi.basis(), "1-cochain")?;
    let b = a.basis();
    let p = psi.parity();
    let mut table = BracketTable::new(b.clone(), p);
    for (i, j) in table.independent_pairs().collect::<Vec<_>>() {
        let (pi, pj) = (b.parity(i), b.parity(j));
        let mut v = a.bracket(&a.e(i), &psi.image(j))?.scale(&sign_poly(pi.koszul(p)));
        let t2 = a.bracket(&a.e(j), &psi.image(i))?;
        v.add_scaled(&t2, &sign_poly(-pj.koszul(pi + p)));
        let t3 = psi.apply(&a.table().value(i, j));
        v.add_scaled(&t3, &Poly::from_int(-1));
        table.set(i, j, lincomb_of(&v))?;
    }
    Ok(Cochain2 { table })
}

/// `(d2φ)(x₀,x₁,x₂)` with the Koszul signs of moving arguments to the front.
pub fn d2_value(a: &LieSuperAlgebra, phi: &Cochain2, idx: [usize; 3]) -> TensorElement {
    let b = a.basis();
    let par: Vec<Parity> = idx.iter().map(|&i| b.parity(i)).collect();
    let pphi = phi.parity();
    let before = |k: usize, skip: Option<usize>| {
        (0..k)
            .filter(|m| Some(*m) != skip)
            .fold(Parity::Even, |acc, m| acc + par[m])
    };
    let mut out = TensorElement::zero(b.clone(), 1);
    for i in 0..3 {
        let rest: Vec<usize> = (0..3).filter(|&m| m != i).collect();
        let inner = phi.value(idx[rest[0]], idx[rest[1]]);
        let term = a.bracket(&a.e(idx[i]), &inner).expect("same basis");
        let mut s = if i % 2 == 0 { 1 } else { -1 };
        s *= par[i].koszul(before(i, None) + pphi);
        out.add_scaled(&term, &sign_poly(s));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let k = (0..3).find(|&m| m != i && m != j).expect("three slots");
            let xy = a.table().value(idx[i], idx[j]);
            let mut term = TensorElement::zero(b.clone(), 1);
            for (s, c) in xy.terms() {
                term.add_scaled(&phi.value(s[0], idx[k]), c);
            }
            let mut s = if (i + j) % 2 == 0 { 1 } else { -1 };
            s *= par[i].koszul(before(i, None));
            s *= par[j].koszul(before(j, Some(i)));
            out.add_scaled(&term, &sign_poly(s));
        }
    }
    out
}

/// Outcome of a scan over basis triples.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleReport {
    pub witness: Option<((String, String, String), TensorElement)>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn sorted_triples(b: &GradedBasis) -> Vec<[usize; 3]> {
    let n = b.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let repeats_even = (i == j && !b.parity(i).is_odd())
                    || (j == k && !b.parity(j).is_odd());
                if !repeats_even {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// `d2φ = 0` on every basis triple.
pub fn is_cocycle2(a: &LieSuperAlgebra, phi: &Cochain2) -> Result<CocycleReport> {
    same_basis(a, phi.basis(), "2-cochain")?;
    let b = a.basis();
    for t in sorted_triples(b) {
        let v = d2_value(a, phi, t);
        if !v.is_zero() {
            let names = (
                b.name(t[0]).to_string(),
                b.name(t[1]).to_string(),
                b.name(t[2]).to_string(),
            );
            return Ok(CocycleReport {
                witness: Some((names, v)),
            });
        }
    }
    Ok(CocycleReport { witness: None })
}

/// Unknowns of a 1-cochain of parity `p`: pairs `(source, target)` in
/// lexicographic order.
fn cochain1_unknowns(b: &GradedBasis, p: Parity) -> Vec<(usize, usize)> {
    let n = b.dim();
    (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .filter(|&(s, t)| b.parity(t) == b.parity(s) + p)
        .collect()
}

/// Coordinates of a 2-cochain of parity `p`: independent pair then target.
fn cochain2_coords(b: &GradedBasis, p: Parity) -> Vec<(usize, usize, usize)> {
    let table = BracketTable::new(Arc::new(b.clone()), p);
    let pairs: Vec<(usize, usize)> = table.independent_pairs().collect();
    let mut out = Vec::new();
    for (i, j) in pairs {
        for k in 0..b.dim() {
            if b.parity(k) == b.parity(i) + b.parity(j) + p {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Matrix of `d1` restricted to cochains of parity `p`, in the canonical
/// unknown order, plus the unknown list.
fn d1_matrix(a: &LieSuperAlgebra, p: Parity) -> Result<(PolyMatrix, Vec<(usize, usize)>)> {
    let b = a.basis();
    let unknowns = cochain1_unknowns(b, p);
    let rows = cochain2_coords(b, p);
    let mut m = PolyMatrix::zeros(rows.len(), unknowns.len());
    for (col, &(s, t)) in unknowns.iter().enumerate() {
        let img = d1(a, &Cochain1::elementary(b.clone(), s, t))?;
        for (row, &(i, j, k)) in rows.iter().enumerate() {
            let c = img.value(i, j).coeff(&[k]);
            if !c.is_zero() {
                m.set(row, col, c);
            }
        }
    }
    Ok((m, unknowns))
}

#[derive(Clone, Debug)]
pub enum CoboundaryResult {
    /// `d1(ψ_num) = denominator · φ`; when the denominator is 1, ψ is exact.
    Found {
        psi: Cochain1,
        denominator: Poly,
        assumptions: Vec<Poly>,
        verified: bool,
        cross_checked: bool,
    },
    None {
        rank: usize,
        augmented_rank: usize,
        assumptions: Vec<Poly>,
        cocycle: bool,
    },
}

impl CoboundaryResult {
    pub fn is_found(&self) -> bool {
        matches!(self, CoboundaryResult::Found { .. })
    }
}

const CROSS_CHECK_SEED: u64 = 0x5eed_c0b0;

/// Solves `d1ψ = φ` over the fraction field of the parameters, taking the
/// canonical solution (free unknowns zero).
pub fn solve_coboundary(a: &LieSuperAlgebra, phi: &Cochain2) -> Result<CoboundaryResult> {
    same_basis(a, phi.basis(), "2-cochain")?;
    let b = a.basis();
    let p = phi.parity();
    let (m, unknowns) = d1_matrix(a, p)?;
    let rhs: Vec<Poly> = cochain2_coords(b, p)
        .iter()
        .map(|&(i, j, k)| phi.value(i, j).coeff(&[k]))
        .collect();
    let sol = linalg::solve(&m, &rhs);
    let augmented = m.augmented(&rhs);
    match sol {
        Solution::Inconsistent {
            rank,
            augmented_rank,
            assumptions,
        } => {
            let cocycle = is_cocycle2(a, phi)?.passed();
            Ok(CoboundaryResult::None {
                rank,
                augmented_rank,
                assumptions,
                cocycle,
            })
        }
        Solution::Solved {
            values,
            assumptions,
            ..
        } => {
            let mut images = vec![Vec::new(); b.dim()];
            for (&(s, t), v) in unknowns.iter().zip(&values.numerators) {
                if !v.is_zero() {
                    images[s].push((t, v.clone()));
                }
            }
            let psi = Cochain1::new(b.clone(), p, images)?;
            let verified = d1(a, &psi)? == phi.scale(&values.denominator);
            let ra = RankResult {
                rank: linalg::rank(&m).rank,
                assumptions: assumptions.clone(),
            };
            let rb = RankResult {
                rank: ra.rank,
                assumptions: assumptions.clone(),
            };
            let cross_checked = linalg::rank_cross_check(&m, &ra, CROSS_CHECK_SEED)
                && linalg::rank_cross_check(&augmented, &rb, CROSS_CHECK_SEED + 2);
            Ok(CoboundaryResult::Found {
                psi,
                denominator: values.denominator,
                assumptions,
                verified,
                cross_checked,
            })
        }
    }
}

/// Mixed jacobiator of two brackets on one basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibilityReport {
    pub witness: Option<((String, String, String), TensorElement)>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// `μ1 + t·μ2` satisfies Jacobi to first order in `t`, i.e. the mixed
/// jacobiator vanishes.
pub fn compatible_pair(mu1: &LieSuperAlgebra, mu2: &LieSuperAlgebra) -> Result<CompatibilityReport> {
    if **mu1.basis() != **mu2.basis() {
        return Err(Error::usage(format!(
            "{} and {} do not share a basis",
            mu1.name(),
            mu2.name()
        )));
    }
    let b = mu1.basis();
    let n = b.dim();
    let e = |i| TensorElement::basis_vector(b.clone(), i);
    let mixed = |x: &LieSuperAlgebra, y: &LieSuperAlgebra, i: usize, j: usize, k: usize| {
        // x-bracket on the outside, y-bracket inside
        let sign = b.parity(i).koszul(b.parity(j));
        let t1 = x.bracket(&e(i), &y.table().value(j, k)).expect("shared");
        let t2 = x.bracket(&y.table().value(i, j), &e(k)).expect("shared");
        let t3 = x.bracket(&e(j), &y.table().value(i, k)).expect("shared");
        let mut out = t1.try_sub(&t2).expect("degree 1");
        out.add_scaled(&t3, &Poly::from_int(-sign));
        out
    };
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = mixed(mu1, mu2, i, j, k)
                    .try_add(&mixed(mu2, mu1, i, j, k))
                    .expect("degree 1");
                if !v.is_zero() {
                    return Ok(CompatibilityReport {
                        witness: Some((
                            (b.name(i).into(), b.name(j).into(), b.name(k).into()),
                            v,
                        )),
                    });
                }
            }
        }
    }
    Ok(CompatibilityReport { witness: None })
}

/// Degree 0→1 coboundary of `r` with coefficients in `g⊗g`:
/// `x ↦ [x,a]⊗b + (−1)^{|x||a|} a⊗[x,b]` summed over the terms `a⊗b` of `r`.
pub fn coboundary_in_wedge(a: &LieSuperAlgebra, r: &TensorElement) -> Result<Cobracket> {
    if r.degree() != 2 || **r.basis() != **a.basis() {
        return Err(Error::usage(format!(
            "expected a 2-tensor over {}",
            a.name()
        )));
    }
    let b = a.basis();
    let mut delta = Vec::with_capacity(a.dim());
    for x in 0..a.dim() {
        let mut out = TensorElement::zero(b.clone(), 2);
        for (s, c) in r.terms() {
            let (l, rt) = (s[0], s[1]);
            for (k, v) in a.bracket_basis(x, l) {
                out.add_term(slots(&[*k, rt]), c * v);
            }
            let sign = b.parity(x).koszul(b.parity(l));
            for (k, v) in a.bracket_basis(x, rt) {
                let coeff = c * v;
                out.add_term(slots(&[l, *k]), if sign < 0 { -coeff } else { coeff });
            }
        }
        delta.push(out);
    }
    Cobracket::new(a.clone(), delta)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub cochain1_dim: usize,
    pub cochain2_dim: usize,
    /// dim ker d1 (derivations).
    pub derivations_dim: usize,
    /// dim Z² = dim ker d2.
    pub kernel_dim: usize,
    /// dim B² = rank d1.
    pub image_dim: usize,
    pub quotient_dim: usize,
    pub parameter_assumptions: Vec<String>,
    pub cross_checked: bool,
}

pub const H2_DIM_LIMIT: usize = 12;

/// Matrix of `d2` on even 2-cochains.
fn d2_matrix(a: &LieSuperAlgebra) -> Result<PolyMatrix> {
    let b = a.basis();
    let cols = cochain2_coords(b, Parity::Even);
    let triples = sorted_triples(b);
    let n = b.dim();
    let mut m = PolyMatrix::zeros(triples.len() * n, cols.len());
    for (col, &(i, j, k)) in cols.iter().enumerate() {
        let mut t = BracketTable::new(b.clone(), Parity::Even);
        t.set(i, j, vec![(k, Poly::one())])?;
        let phi = Cochain2::from_table(t);
        for (ti, tr) in triples.iter().enumerate() {
            let v = d2_value(a, &phi, *tr);
            for (s, c) in v.terms() {
                m.set(ti * n + s[0], col, c.clone());
            }
        }
    }
    Ok(m)
}

/// Dimensions of `Z²`, `B²`, `H²` for even cochains with adjoint
/// coefficients, generic in the parameters.
pub fn h2_dim(a: &LieSuperAlgebra) -> Result<CohomologyReport> {
    if a.dim() > H2_DIM_LIMIT {
        return Err(Error::DimensionGuard(format!(
            "{} has dimension {} > {H2_DIM_LIMIT}",
            a.name(),
            a.dim()
        )));
    }
    let (m1, unknowns) = d1_matrix(a, Parity::Even)?;
    let m2 = d2_matrix(a)?;
    let r1 = linalg::rank(&m1);
    let r2 = linalg::rank(&m2);
    let cross_checked = linalg::rank_cross_check(&m1, &r1, CROSS_CHECK_SEED)
        && linalg::rank_cross_check(&m2, &r2, CROSS_CHECK_SEED + 1);
    let c1 = unknowns.len();
    let c2 = m2.cols();
    let kernel_dim = c2 - r2.rank;
    let mut assumptions: Vec<String> = r1
        .assumptions
        .iter()
        .chain(&r2.assumptions)
        .map(|p| format!("{p} != 0"))
        .collect();
    assumptions.sort();
    assumptions.dedup();
    Ok(CohomologyReport {
        cochain1_dim: c1,
        cochain2_dim: c2,
        derivations_dim: c1 - r1.rank,
        kernel_dim,
        image_dim: r1.rank,
        quotient_dim: kernel_dim - r1.rank,
        parameter_assumptions: assumptions,
        cross_checked,
    })
}
