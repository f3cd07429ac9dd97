use std::fmt;
use std::sync::Arc;

use super::basis::{GradedBasis, Parity};
use super::tensor::{slots, TensorElement};
use crate::error::{Error, Result};
use crate::scalar::{Assignment, Poly};

/// Sparse linear combination of basis vectors, sorted by index, no zeros.
pub type LinComb = Vec<(usize, Poly)>;

pub(crate) fn lincomb_from(iter: impl IntoIterator<Item = (usize, Poly)>) -> LinComb {
    let mut acc = std::collections::BTreeMap::<usize, Poly>::new();
    for (i, c) in iter {
        let e = acc.entry(i).or_default();
        *e = &*e + &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn lincomb_of(t: &TensorElement) -> LinComb {
    debug_assert_eq!(t.degree(), 1);
    t.terms().map(|(s, c)| (s[0], c.clone())).collect()
}

/// Graded-antisymmetric bilinear table `V × V → V` on basis vectors:
/// the storage shared by Lie brackets and 2-cochains.
///
/// Every ordered pair is materialized; `set(i, j, v)` also writes
/// `(j, i) ↦ −(−1)^{|i||j|} v`.
#[derive(Clone)]
pub struct BracketTable {
    basis: Arc<GradedBasis>,
    parity: Parity,
    table: Vec<LinComb>,
}

impl PartialEq for BracketTable {
    fn eq(&self, other: &Self) -> bool {
        *self.basis == *other.basis && self.parity == other.parity && self.table == other.table
    }
}

impl Eq for BracketTable {}

impl BracketTable {
    pub fn new(basis: Arc<GradedBasis>, parity: Parity) -> Self {
        let n = basis.dim();
        Self {
            basis,
            parity,
            table: vec![Vec::new(); n * n],
        }
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Parity of the bilinear map itself (even for Lie brackets).
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn get(&self, i: usize, j: usize) -> &[(usize, Poly)] {
        &self.table[i * self.dim() + j]
    }

    /// Sign `−(−1)^{|i||j|}` relating `(j, i)` to `(i, j)`.
    pub fn swap_sign(&self, i: usize, j: usize) -> i64 {
        -self.basis.parity(i).koszul(self.basis.parity(j))
    }

    /// Pairs carrying independent data: `i < j`, plus `i == j` when the
    /// generator is odd.
    pub fn independent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| {
            (i..n).filter_map(move |j| {
                (i < j || self.basis.parity(i).is_odd()).then_some((i, j))
            })
        })
    }

    /// Sets `(i, j)` and its mirror. Rejects values violating parity or
    /// antisymmetry, and values conflicting with an earlier assignment.
    pub fn set(&mut self, i: usize, j: usize, value: LinComb) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(Error::definition("basis index out of range"));
        }
        let value = lincomb_from(value);
        let bi = self.basis.parity(i);
        let bj = self.basis.parity(j);
        let target = bi + bj + self.parity;
        for (k, _) in &value {
            if self.basis.parity(*k) != target {
                return Err(Error::definition(format!(
                    "parity mismatch in [{}, {}]: {} is {}, expected {}",
                    self.basis.name(i),
                    self.basis.name(j),
                    self.basis.name(*k),
                    self.basis.parity(*k),
                    target
                )));
            }
        }
        if i == j && !bi.is_odd() && !value.is_empty() {
            return Err(Error::definition(format!(
                "[{0}, {0}] must vanish for even {0}",
                self.basis.name(i)
            )));
        }
        let existing = &self.table[i * n + j];
        if !existing.is_empty() && *existing != value {
            return Err(Error::definition(format!(
                "conflicting values for [{}, {}]",
                self.basis.name(i),
                self.basis.name(j)
            )));
        }
        let sign = self.swap_sign(i, j);
        let mirrored: LinComb = value
            .iter()
            .map(|(k, c)| (*k, if sign < 0 { -c } else { c.clone() }))
            .collect();
        self.table[i * n + j] = value;
        if i != j {
            self.table[j * n + i] = mirrored;
        }
        Ok(())
    }

    /// Bilinear extension to arbitrary degree-1 elements.
    pub fn apply(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.degree() != 1 || y.degree() != 1 {
            return Err(Error::usage("bilinear map takes degree-1 arguments"));
        }
        if **x.basis() != *self.basis || **y.basis() != *self.basis {
            return Err(Error::usage("arguments live over a different basis"));
        }
        let mut out = TensorElement::zero(self.basis.clone(), 1);
        for (si, ci) in x.terms() {
            for (sj, cj) in y.terms() {
                let cij = ci * cj;
                for (k, c) in self.get(si[0], sj[0]) {
                    out.add_term(slots(&[*k]), &cij * c);
                }
            }
        }
        Ok(out)
    }

    pub fn value(&self, i: usize, j: usize) -> TensorElement {
        TensorElement::vector(self.basis.clone(), self.get(i, j).iter().cloned())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = self.clone();
        for entry in &mut out.table {
            *entry = lincomb_from(entry.iter().map(|(k, c)| (*k, f(c))));
        }
        out
    }

    /// `a·self + b·other` entrywise.
    pub fn combine(&self, a: &Poly, other: &Self, b: &Poly) -> Result<Self> {
        if *self.basis != *other.basis {
            return Err(Error::usage("bracket tables over different bases"));
        }
        if self.parity != other.parity {
            return Err(Error::usage("bracket tables of different parity"));
        }
        let mut out = self.clone();
        for (idx, entry) in out.table.iter_mut().enumerate() {
            *entry = lincomb_from(
                self.table[idx]
                    .iter()
                    .map(|(k, c)| (*k, c * a))
                    .chain(other.table[idx].iter().map(|(k, c)| (*k, c * b))),
            );
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|e| e.is_empty())
    }

    /// Renders `[a, b] = value` lines for the independent nonzero pairs.
    pub fn render_lines(&self, dsl: bool) -> Vec<String> {
        self.independent_pairs()
            .filter(|&(i, j)| !self.get(i, j).is_empty())
            .map(|(i, j)| {
                let v = self.value(i, j);
                format!(
                    "[{}, {}] = {}",
                    self.basis.name(i),
                    self.basis.name(j),
                    if dsl { v.to_dsl() } else { v.to_string() }
                )
            })
            .collect()
    }
}

/// Outcome of a graded Jacobi scan.
#[derive(Clone, Debug, PartialEq)]
pub enum JacobiReport {
    Pass,
    Witness {
        triple: (String, String, String),
        residual: TensorElement,
    },
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiReport::Pass)
    }
}

/// Lie superalgebra given by (possibly parameter-dependent) structure
/// constants. Graded antisymmetry holds by construction; the graded Jacobi
/// identity is checked, never assumed.
#[derive(Clone)]
pub struct LieSuperAlgebra {
    name: String,
    table: BracketTable,
}

impl PartialEq for LieSuperAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl fmt::Debug for LieSuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LieSuperAlgebra {} {{", self.name)?;
        for line in self.table.render_lines(false) {
            writeln!(f, "  {line}")?;
        }
        write!(f, "}}")
    }
}

impl LieSuperAlgebra {
    /// Builds an algebra from bracket entries `(i, j, [e_i, e_j])`.
    pub fn new(
        name: impl Into<String>,
        basis: Arc<GradedBasis>,
        entries: impl IntoIterator<Item = (usize, usize, LinComb)>,
    ) -> Result<Self> {
        let mut table = BracketTable::new(basis, Parity::Even);
        for (i, j, v) in entries {
            table.set(i, j, v)?;
        }
        Ok(Self {
            name: name.into(),
            table,
        })
    }

    /// Same as [`LieSuperAlgebra::new`] but entries are addressed by name.
    pub fn from_named(
        name: impl Into<String>,
        basis: Arc<GradedBasis>,
        entries: &[(&str, &str, &[(&str, Poly)])],
    ) -> Result<Self> {
        let mut resolved = Vec::with_capacity(entries.len());
        for (a, b, v) in entries {
            let lc = v
                .iter()
                .map(|(n, c)| Ok((basis.index(n)?, c.clone())))
                .collect::<Result<LinComb>>()?;
            resolved.push((basis.index(a)?, basis.index(b)?, lc));
        }
        Self::new(name, basis, resolved)
    }

    pub fn from_table(name: impl Into<String>, table: BracketTable) -> Result<Self> {
        if table.parity() != Parity::Even {
            return Err(Error::usage("a Lie bracket must be an even map"));
        }
        Ok(Self {
            name: name.into(),
            table,
        })
    }

    pub fn abelian(name: impl Into<String>, basis: Arc<GradedBasis>) -> Self {
        Self {
            name: name.into(),
            table: BracketTable::new(basis, Parity::Even),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.table.basis()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn generator(&self, name: &str) -> Result<TensorElement> {
        Ok(TensorElement::basis_vector(
            self.basis().clone(),
            self.basis().index(name)?,
        ))
    }

    pub fn e(&self, i: usize) -> TensorElement {
        TensorElement::basis_vector(self.basis().clone(), i)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Poly)] {
        self.table.get(i, j)
    }

    pub fn bracket(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        self.table.apply(x, y)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_zero()
    }

    /// `J(x,y,z) = [x,[y,z]] − [[x,y],z] − (−1)^{|x||y|}[y,[x,z]]` on basis vectors.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> TensorElement {
        let b = self.basis();
        let (x, y, z) = (self.e(i), self.e(j), self.e(k));
        let yz = self.table.value(j, k);
        let xy = self.table.value(i, j);
        let xz = self.table.value(i, k);
        let t1 = self.bracket(&x, &yz).expect("same basis");
        let t2 = self.bracket(&xy, &z).expect("same basis");
        let t3 = self.bracket(&y, &xz).expect("same basis");
        let sign = b.parity(i).koszul(b.parity(j));
        let mut out = t1.try_sub(&t2).expect("degree 1");
        out.add_scaled(&t3, &Poly::from_int(-sign));
        out
    }

    /// Scans basis triples `i ≤ j ≤ k`; the jacobiator is graded
    /// antisymmetric so sorted triples suffice.
    pub fn verify_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let r = self.jacobiator(i, j, k);
                    if !r.is_zero() {
                        let b = self.basis();
                        return JacobiReport::Witness {
                            triple: (b.name(i).into(), b.name(j).into(), b.name(k).into()),
                            residual: r,
                        };
                    }
                }
            }
        }
        JacobiReport::Pass
    }

    /// `a1·μ1 + a2·μ2` on a shared basis. Jacobi is not assumed.
    pub fn pencil(
        mu1: &LieSuperAlgebra,
        mu2: &LieSuperAlgebra,
        a1: &Poly,
        a2: &Poly,
    ) -> Result<LieSuperAlgebra> {
        if *mu1.basis() != *mu2.basis() {
            return Err(Error::usage(format!(
                "pencil of {} and {} needs a shared basis",
                mu1.name, mu2.name
            )));
        }
        Ok(Self {
            name: format!("({a1})*{} + ({a2})*{}", mu1.name, mu2.name),
            table: mu1.table.combine(a1, &mu2.table, a2)?,
        })
    }

    pub fn substitute(&self, a: &Assignment) -> Self {
        Self {
            name: self.name.clone(),
            table: self.table.map_coeffs(|c| c.substitute(a)),
        }
    }

    pub fn scaled(&self, c: &Poly) -> Self {
        Self {
            name: self.name.clone(),
            table: self.table.map_coeffs(|v| v * c),
        }
    }

    /// `ad_x` acting on every leg of `t` with Koszul signs:
    /// `x·(t₁⊗…⊗t_d) = Σ_s (−1)^{|x|(|t₁|+…+|t_{s−1}|)} t₁⊗…⊗[x,t_s]⊗…⊗t_d`.
    pub fn ad_on_tensor(&self, x: usize, t: &TensorElement) -> TensorElement {
        let b = self.basis().clone();
        let px = b.parity(x);
        let mut out = TensorElement::zero(b.clone(), t.degree());
        for slot in 0..t.degree() {
            let part = t.map_leg(
                slot,
                |k| self.bracket_basis(x, k).to_vec(),
                |s| {
                    let before = s[..slot]
                        .iter()
                        .fold(Parity::Even, |acc, &i| acc + b.parity(i));
                    px.koszul(before)
                },
            );
            out = out.try_add(&part).expect("same space");
        }
        out
    }

    /// `ad_v` on a tensor for a degree-1 `v`, extended linearly.
    pub fn ad_vector_on_tensor(&self, v: &TensorElement, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.basis().clone(), t.degree());
        for (s, c) in v.terms() {
            out.add_scaled(&self.ad_on_tensor(s[0], t), c);
        }
        out
    }

    /// Bracket lines in human-readable form.
    pub fn describe(&self) -> Vec<String> {
        self.table.render_lines(false)
    }
}
