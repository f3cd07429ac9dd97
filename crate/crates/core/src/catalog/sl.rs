//! sl(N), gl(N), the Borel algebra and the r-matrices living on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{slots, wedge, GradedBasis, LieSuperAlgebra, LinComb, TensorElement};
use crate::scalar::{int, rat, Poly, Rational};

use num_traits::Zero;

pub(crate) fn unit_name(prefix: &str, i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i}_{j}")
    }
}

/// Sparse N×N matrix, 1-based `(row, col)` keys.
type Mat = BTreeMap<(usize, usize), Rational>;

/// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
fn unit_commutator(i: usize, j: usize, k: usize, l: usize) -> Mat {
    let mut m = Mat::new();
    if j == k {
        *m.entry((i, l)).or_insert_with(Rational::zero) += int(1);
    }
    if l == i {
        *m.entry((k, j)).or_insert_with(Rational::zero) -= int(1);
    }
    m.retain(|_, c| !c.is_zero());
    m
}

/// Basis layout of sl(N): `H_{k,k+1}` for `k = 1..N−1`, then `E_ij`
/// (`i ≠ j`) in lexicographic order.
pub struct SlLayout {
    pub n: usize,
    offdiag: BTreeMap<(usize, usize), usize>,
}

impl SlLayout {
    pub fn new(n: usize) -> Self {
        let mut offdiag = BTreeMap::new();
        let mut idx = n - 1;
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    offdiag.insert((i, j), idx);
                    idx += 1;
                }
            }
        }
        Self { n, offdiag }
    }

    pub fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..self.n).map(|k| unit_name("H", k, k + 1, self.n)).collect();
        names.extend(self.offdiag.keys().map(|&(i, j)| unit_name("E", i, j, self.n)));
        names
    }

    /// Index of `H_{k,k+1}`.
    pub fn cartan(&self, k: usize) -> usize {
        k - 1
    }

    /// Index of `E_ij`, `i ≠ j`.
    pub fn unit(&self, i: usize, j: usize) -> usize {
        self.offdiag[&(i, j)]
    }

    /// Matrix of a basis element.
    fn matrix(&self, idx: usize) -> Mat {
        let mut m = Mat::new();
        if idx < self.n - 1 {
            let k = idx + 1;
            m.insert((k, k), int(1));
            m.insert((k + 1, k + 1), int(-1));
        } else {
            let (&(i, j), _) = self.offdiag.iter().find(|(_, &v)| v == idx).expect("index");
            m.insert((i, j), int(1));
        }
        m
    }

    /// Coordinates of a traceless matrix: off-diagonal entries directly,
    /// `H_k` coefficient = partial sum of the diagonal up to `k`.
    fn decompose(&self, m: &Mat) -> Result<LinComb> {
        let mut out = Vec::new();
        let mut partial = Rational::zero();
        for k in 1..self.n {
            partial += m.get(&(k, k)).cloned().unwrap_or_else(Rational::zero);
            if !partial.is_zero() {
                out.push((self.cartan(k), Poly::constant(partial.clone())));
            }
        }
        partial += m
            .get(&(self.n, self.n))
            .cloned()
            .unwrap_or_else(Rational::zero);
        if !partial.is_zero() {
            return Err(Error::Structural("matrix is not traceless".into()));
        }
        for (&(i, j), c) in m {
            if i != j {
                out.push((self.unit(i, j), Poly::constant(c.clone())));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        Ok(out)
    }

    /// `H_{ab} = E_aa − E_bb` (a < b) as a vector: `Σ_{k=a}^{b−1} H_{k,k+1}`.
    pub fn cartan_difference(&self, a: usize, b: usize) -> Vec<(usize, Poly)> {
        (a..b).map(|k| (self.cartan(k), Poly::one())).collect()
    }
}

fn mat_commutator(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::new();
    for (&(i, j), x) in a {
        for (&(k, l), y) in b {
            for ((r, c), v) in unit_commutator(i, j, k, l) {
                *out.entry((r, c)).or_insert_with(Rational::zero) += v * x * y;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// sl(N) in the basis `H_{k,k+1}`, `E_ij`, from matrix-unit commutators.
pub fn make_sl(n: usize) -> Result<LieSuperAlgebra> {
    if n < 2 {
        return Err(Error::definition(format!("sl(N) needs N >= 2, got {n}")));
    }
    let layout = SlLayout::new(n);
    let basis = GradedBasis::even(layout.names())?.shared();
    let dim = basis.dim();
    let mats: Vec<Mat> = (0..dim).map(|i| layout.matrix(i)).collect();
    let mut entries = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let c = mat_commutator(&mats[a], &mats[b]);
            if !c.is_empty() {
                entries.push((a, b, layout.decompose(&c)?));
            }
        }
    }
    LieSuperAlgebra::new(format!("sl{n}"), basis, entries)
}

/// gl(N) on matrix units named `<prefix>ij`, lexicographic order.
pub fn make_gl_named(n: usize, prefix: &str) -> Result<LieSuperAlgebra> {
    if n < 2 {
        return Err(Error::definition(format!("gl(N) needs N >= 2, got {n}")));
    }
    let mut names = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            names.push(unit_name(prefix, i, j, n));
        }
    }
    let basis = GradedBasis::even(names)?.shared();
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut entries = Vec::new();
    for a in 0..n * n {
        for b in a + 1..n * n {
            let (i, j) = (a / n + 1, a % n + 1);
            let (k, l) = (b / n + 1, b % n + 1);
            let c = unit_commutator(i, j, k, l);
            if !c.is_empty() {
                let lc = c
                    .into_iter()
                    .map(|((r, s), v)| (idx(r, s), Poly::constant(v)))
                    .collect();
                entries.push((a, b, lc));
            }
        }
    }
    LieSuperAlgebra::new(format!("gl{n}"), basis, entries)
}

pub fn make_gl(n: usize) -> Result<LieSuperAlgebra> {
    make_gl_named(n, "E")
}

/// `{h, x | [h, x] = 2x}`.
pub fn make_borel() -> LieSuperAlgebra {
    let basis = GradedBasis::even(["h", "x"]).expect("static basis").shared();
    LieSuperAlgebra::from_named("borel", basis, &[("h", "x", &[("x", Poly::from_int(2))])])
        .expect("static table")
}

/// `h ∧ x` on the Borel algebra.
pub fn make_r_borel() -> TensorElement {
    let b = make_borel();
    wedge(&b.e(0), &b.e(1)).expect("degree 1")
}

fn sl_basis(n: usize) -> Result<Arc<GradedBasis>> {
    if n < 2 {
        return Err(Error::definition(format!("sl(N) needs N >= 2, got {n}")));
    }
    Ok(GradedBasis::even(SlLayout::new(n).names())?.shared())
}

/// Standard r-matrix:
/// `(h/N)(Σ_k k(N−k) H_k⊗H_k + Σ_{k<l} (N−l)k (H_k⊗H_l + H_l⊗H_k)) + 2h Σ_{k<l} E_lk⊗E_kl`.
pub fn make_rdj(n: usize, h: &Poly) -> Result<TensorElement> {
    let basis = sl_basis(n)?;
    let layout = SlLayout::new(n);
    let nn = n as i64;
    let mut r = TensorElement::zero(basis, 2);
    for k in 1..n {
        let kk = k as i64;
        let c = h.scale(&rat(kk * (nn - kk), nn));
        r.add_term(slots(&[layout.cartan(k), layout.cartan(k)]), c);
        for l in k + 1..n {
            let c = h.scale(&rat((nn - l as i64) * kk, nn));
            r.add_term(slots(&[layout.cartan(k), layout.cartan(l)]), c.clone());
            r.add_term(slots(&[layout.cartan(l), layout.cartan(k)]), c);
        }
    }
    for k in 1..=n {
        for l in k + 1..=n {
            r.add_term(
                slots(&[layout.unit(l, k), layout.unit(k, l)]),
                h.scale(&int(2)),
            );
        }
    }
    Ok(r)
}

/// Jordanian r-matrix `−ξ(H_{1N}∧E_{1N} + 2Σ_{k=2}^{N−1} E_{1k}∧E_{kN})`.
pub fn make_rjordan(n: usize, xi: &Poly) -> Result<TensorElement> {
    let basis = sl_basis(n)?;
    let layout = SlLayout::new(n);
    let h1n = TensorElement::vector(basis.clone(), layout.cartan_difference(1, n));
    let e1n = TensorElement::basis_vector(basis.clone(), layout.unit(1, n));
    let mut inner = wedge(&h1n, &e1n)?;
    for k in 2..n {
        let a = TensorElement::basis_vector(basis.clone(), layout.unit(1, k));
        let b = TensorElement::basis_vector(basis.clone(), layout.unit(k, n));
        inner.add_scaled(&wedge(&a, &b)?, &Poly::from_int(2));
    }
    Ok(inner.scale(&-xi))
}

/// Full two-parameter r-matrix (standard part plus jordanian part), built
/// term by term rather than by adding the two constructors.
pub fn make_rfull(n: usize, h: &Poly, xi: &Poly) -> Result<TensorElement> {
    let basis = sl_basis(n)?;
    let layout = SlLayout::new(n);
    let nn = n as i64;
    let mut r = TensorElement::zero(basis.clone(), 2);
    for k in 1..n {
        for l in 1..n {
            let (a, b) = (k.min(l) as i64, k.max(l) as i64);
            let c = h.scale(&rat(a * (nn - b), nn));
            r.add_term(slots(&[layout.cartan(k), layout.cartan(l)]), c);
        }
    }
    for k in 1..=n {
        for l in k + 1..=n {
            r.add_term(slots(&[layout.unit(l, k), layout.unit(k, l)]), h.scale(&int(2)));
        }
    }
    let e1n = layout.unit(1, n);
    for k in 1..n {
        r.add_term(slots(&[layout.cartan(k), e1n]), -xi);
        r.add_term(slots(&[e1n, layout.cartan(k)]), xi.clone());
    }
    for k in 2..n {
        let (a, b) = (layout.unit(1, k), layout.unit(k, n));
        r.add_term(slots(&[a, b]), xi.scale(&int(-2)));
        r.add_term(slots(&[b, a]), xi.scale(&int(2)));
    }
    Ok(r)
}

/// gl(N) analogue of the standard r-matrix: `h(Σ_i E_ii⊗E_ii + 2Σ_{k<l} E_lk⊗E_kl)`,
/// over a gl basis named with `prefix`.
pub fn make_rdj_gl(n: usize, h: &Poly, prefix: &str) -> Result<TensorElement> {
    let gl = make_gl_named(n, prefix)?;
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut r = TensorElement::zero(gl.basis().clone(), 2);
    for i in 1..=n {
        r.add_term(slots(&[idx(i, i), idx(i, i)]), h.clone());
    }
    for k in 1..=n {
        for l in k + 1..=n {
            r.add_term(slots(&[idx(l, k), idx(k, l)]), h.scale(&int(2)));
        }
    }
    Ok(r)
}

/// gl(N) analogue of the jordanian r-matrix with `H_{1N} = E_11 − E_NN`.
pub fn make_rjordan_gl(n: usize, xi: &Poly, prefix: &str) -> Result<TensorElement> {
    let gl = make_gl_named(n, prefix)?;
    let basis = gl.basis().clone();
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let h1n = TensorElement::vector(
        basis.clone(),
        [(idx(1, 1), Poly::one()), (idx(n, n), Poly::from_int(-1))],
    );
    let e1n = TensorElement::basis_vector(basis.clone(), idx(1, n));
    let mut inner = wedge(&h1n, &e1n)?;
    for k in 2..n {
        let a = TensorElement::basis_vector(basis.clone(), idx(1, k));
        let b = TensorElement::basis_vector(basis.clone(), idx(k, n));
        inner.add_scaled(&wedge(&a, &b)?, &Poly::from_int(2));
    }
    Ok(inner.scale(&-xi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff_of(a: &LieSuperAlgebra, x: &str, y: &str) -> TensorElement {
        a.bracket(&a.generator(x).unwrap(), &a.generator(y).unwrap())
            .unwrap()
    }

    #[test]
    fn sl2_relations() {
        let a = make_sl(2).unwrap();
        assert_eq!(a.basis().names(), ["H12", "E12", "E21"]);
        let two = Poly::from_int(2);
        assert_eq!(coeff_of(&a, "H12", "E12"), a.generator("E12").unwrap().scale(&two));
        assert_eq!(coeff_of(&a, "H12", "E21"), a.generator("E21").unwrap().scale(&-&two));
        assert_eq!(coeff_of(&a, "E12", "E21"), a.generator("H12").unwrap());
    }

    #[test]
    fn sl3_and_sl4_units() {
        let a = make_sl(3).unwrap();
        assert_eq!(coeff_of(&a, "E12", "E23"), a.generator("E13").unwrap());
        // [E13, E31] = E11 − E33 = H12 + H23
        let h13 = a
            .generator("H12")
            .unwrap()
            .try_add(&a.generator("H23").unwrap())
            .unwrap();
        assert_eq!(coeff_of(&a, "E13", "E31"), h13);
        let b = make_sl(4).unwrap();
        assert!(coeff_of(&b, "E12", "E34").is_zero());
        assert!(make_sl(1).is_err());
    }

    #[test]
    fn rdj_n2_and_symmetry() {
        let h = Poly::param("h");
        let r = make_rdj(2, &h).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.coeff(&[0, 0]), h.scale(&rat(1, 2)));
        assert_eq!(r.coeff(&[2, 1]), h.scale(&int(2)));
        let r3 = make_rdj(3, &h).unwrap();
        assert_eq!(r3.coeff(&[0, 1]), r3.coeff(&[1, 0]));
        assert!(!r3.coeff(&[0, 1]).is_zero());
        let r0 = r3.substitute(&crate::scalar::Assignment::single("h", int(0)));
        assert!(r0.is_zero());
    }

    #[test]
    fn rjordan_small_cases() {
        let xi = Poly::param("xi");
        let r2 = make_rjordan(2, &xi).unwrap();
        // −ξ H∧E: −ξ H⊗E + ξ E⊗H
        assert_eq!(r2.coeff(&[0, 1]), -&xi);
        assert_eq!(r2.coeff(&[1, 0]), xi.clone());
        assert_eq!(r2.len(), 2);
        let r3 = make_rjordan(3, &xi).unwrap();
        let l = SlLayout::new(3);
        assert_eq!(r3.coeff(&[l.unit(1, 2), l.unit(2, 3)]), xi.scale(&int(-2)));
        assert_eq!(r3.coeff(&[l.cartan(2), l.unit(1, 3)]), -&xi);
    }
}
