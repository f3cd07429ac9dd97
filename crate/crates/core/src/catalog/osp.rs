//! osp(1|2) and the pair of dual-basis brackets attached to its two-parameter
//! deformation.
//!
//! The algebra is generated by `h` (even) and `v₊, v₋` (odd) subject to
//! `[h, v±] = ±v±`, `{v₊, v₋} = −h/4`, with `X± = ±4 v± v±`. The remaining
//! brackets are derived by realizing the generators as 2|1 supermatrices,
//! checking the defining relations there, and reading every supercommutator
//! back in the basis `{h, X₊, X₋, v₊, v₋}`.

use crate::cohomology::Cochain1;
use crate::error::{Error, Result};
use crate::lie::{GradedBasis, LieSuperAlgebra, LinComb, Parity};
use crate::linalg::{solve, PolyMatrix};
use crate::scalar::{int, rat, Poly, Rational};

use num_traits::Zero;

/// 3×3 supermatrix, rows/cols 0,1 even and 2 odd.
#[derive(Clone, Debug, PartialEq)]
struct SuperMat([[Rational; 3]; 3]);

impl SuperMat {
    fn zero() -> Self {
        SuperMat(std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())))
    }

    fn unit(i: usize, j: usize, c: Rational) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = c;
        m
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = &self.0[i][j] + &o.0[i][j];
            }
        }
        m
    }

    fn scale(&self, c: &Rational) -> Self {
        let mut m = self.clone();
        for row in &mut m.0 {
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        m
    }

    fn mul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m.0[i][j] += &self.0[i][k] * &o.0[k][j];
                }
            }
        }
        m
    }

    /// `[a, b] = ab − (−1)^{|a||b|} ba`.
    fn supercommutator(a: &Self, pa: Parity, b: &Self, pb: Parity) -> Self {
        let sign = Rational::from_integer((-pa.koszul(pb)).into());
        a.mul(b).add(&b.mul(a).scale(&sign))
    }
}

pub const OSP_NAMES: [&str; 5] = ["h", "Xp", "Xm", "vp", "vm"];

pub fn osp_basis() -> GradedBasis {
    GradedBasis::new([
        ("h", Parity::Even),
        ("Xp", Parity::Even),
        ("Xm", Parity::Even),
        ("vp", Parity::Odd),
        ("vm", Parity::Odd),
    ])
    .expect("static basis")
}

fn osp_matrices() -> Result<Vec<SuperMat>> {
    let h = SuperMat::unit(0, 0, int(1)).add(&SuperMat::unit(1, 1, int(-1)));
    let vp = SuperMat::unit(0, 2, int(1)).add(&SuperMat::unit(2, 1, rat(1, 4)));
    let vm = SuperMat::unit(1, 2, int(1)).add(&SuperMat::unit(2, 0, rat(-1, 4)));
    let xp = vp.mul(&vp).scale(&int(4));
    let xm = vm.mul(&vm).scale(&int(-4));

    let (e, o) = (Parity::Even, Parity::Odd);
    let checks = [
        (SuperMat::supercommutator(&h, e, &vp, o), vp.clone()),
        (SuperMat::supercommutator(&h, e, &vm, o), vm.scale(&int(-1))),
        (SuperMat::supercommutator(&vp, o, &vm, o), h.scale(&rat(-1, 4))),
    ];
    for (lhs, rhs) in checks {
        if lhs != rhs {
            return Err(Error::Structural(
                "osp(1|2) realization violates a defining relation".into(),
            ));
        }
    }
    Ok(vec![h, xp, xm, vp, vm])
}

/// Coordinates of `m` in the span of `basis` (exact solve).
fn decompose(m: &SuperMat, basis: &[SuperMat]) -> Result<LinComb> {
    let mut a = PolyMatrix::zeros(9, basis.len());
    let mut rhs = vec![Poly::zero(); 9];
    for (col, b) in basis.iter().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                a.set(i * 3 + j, col, Poly::constant(b.0[i][j].clone()));
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            rhs[i * 3 + j] = Poly::constant(m.0[i][j].clone());
        }
    }
    let sol = solve(&a, &rhs).into_values().ok_or_else(|| {
        Error::Structural("supercommutator leaves the span of the basis".into())
    })?;
    Ok(sol
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

pub fn make_osp12_algebra() -> Result<LieSuperAlgebra> {
    let basis = osp_basis().shared();
    let mats = osp_matrices()?;
    let mut entries = Vec::new();
    for i in 0..5 {
        for j in i..5 {
            let (pi, pj) = (basis.parity(i), basis.parity(j));
            if i == j && !pi.is_odd() {
                continue;
            }
            let c = SuperMat::supercommutator(&mats[i], pi, &mats[j], pj);
            let lc = decompose(&c, &mats)?;
            if !lc.is_empty() {
                entries.push((i, j, lc));
            }
        }
    }
    LieSuperAlgebra::new("osp12", basis, entries)
}

fn hat_basis() -> std::sync::Arc<GradedBasis> {
    osp_basis().dual().shared()
}

/// First dual-basis bracket: `(ĥ, X̂±) ↦ −2X̂±`, `(ĥ, v̂±) ↦ −v̂±`, `(v̂±, v̂±) ↦ 4X̂±`.
pub fn make_mu1star() -> LieSuperAlgebra {
    let c = Poly::from_int;
    LieSuperAlgebra::from_named(
        "mu1star",
        hat_basis(),
        &[
            ("hat_h", "hat_Xp", &[("hat_Xp", c(-2))]),
            ("hat_h", "hat_Xm", &[("hat_Xm", c(-2))]),
            ("hat_h", "hat_vp", &[("hat_vp", c(-1))]),
            ("hat_h", "hat_vm", &[("hat_vm", c(-1))]),
            ("hat_vp", "hat_vp", &[("hat_Xp", c(4))]),
            ("hat_vm", "hat_vm", &[("hat_Xm", c(4))]),
        ],
    )
    .expect("static table")
}

/// Second dual-basis bracket: `(X̂₊, ĥ) ↦ 2ĥ`, `(X̂₊, X̂₋) ↦ 2X̂₋`,
/// `(X̂₊, v̂±) ↦ v̂±`, `(v̂₊, v̂₊) ↦ 4ĥ`, `(v̂₊, v̂₋) ↦ 4X̂₋`.
pub fn make_mu2star() -> LieSuperAlgebra {
    let c = Poly::from_int;
    LieSuperAlgebra::from_named(
        "mu2star",
        hat_basis(),
        &[
            ("hat_Xp", "hat_h", &[("hat_h", c(2))]),
            ("hat_Xp", "hat_Xm", &[("hat_Xm", c(2))]),
            ("hat_Xp", "hat_vp", &[("hat_vp", c(1))]),
            ("hat_Xp", "hat_vm", &[("hat_vm", c(1))]),
            ("hat_vp", "hat_vp", &[("hat_h", c(4))]),
            ("hat_vp", "hat_vm", &[("hat_Xm", c(4))]),
        ],
    )
    .expect("static table")
}

/// The tabulated 1-cochain
/// `(ĥ, X̂₊, X̂₋, v̂₊, v̂₋) ↦ (−X̂₊, −ĥ, −X̂₋, v̂₋, v̂₋)`, kept as printed.
pub fn make_psi() -> Cochain1 {
    let basis = hat_basis();
    let idx = |n: &str| basis.index(n).expect("static name");
    let m1 = || Poly::from_int(-1);
    let images = vec![
        vec![(idx("hat_Xp"), m1())],
        vec![(idx("hat_h"), m1())],
        vec![(idx("hat_Xm"), m1())],
        vec![(idx("hat_vm"), Poly::one())],
        vec![(idx("hat_vm"), Poly::one())],
    ];
    Cochain1::new(basis, Parity::Even, images).expect("parity preserving")
}

pub struct OspPieces {
    pub algebra: LieSuperAlgebra,
    pub mu1star: LieSuperAlgebra,
    pub mu2star: LieSuperAlgebra,
    pub psi: Cochain1,
}

pub fn make_osp12() -> Result<OspPieces> {
    Ok(OspPieces {
        algebra: make_osp12_algebra()?,
        mu1star: make_mu1star(),
        mu2star: make_mu2star(),
        psi: make_psi(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(a: &LieSuperAlgebra, x: &str, y: &str) -> crate::lie::TensorElement {
        a.bracket(&a.generator(x).unwrap(), &a.generator(y).unwrap())
            .unwrap()
    }

    #[test]
    fn primary_relations() {
        let a = make_osp12_algebra().unwrap();
        assert_eq!(br(&a, "h", "vp"), a.generator("vp").unwrap());
        assert_eq!(br(&a, "h", "vm"), a.generator("vm").unwrap().neg());
        assert_eq!(
            br(&a, "vp", "vm"),
            a.generator("h").unwrap().scale(&Poly::from_ratio(-1, 4))
        );
        // odd–odd bracket is symmetric
        assert_eq!(br(&a, "vm", "vp"), br(&a, "vp", "vm"));
    }

    #[test]
    fn derived_even_relations() {
        let a = make_osp12_algebra().unwrap();
        // X± = ±4v±v± = ±2{v±, v±}
        assert_eq!(
            br(&a, "vp", "vp"),
            a.generator("Xp").unwrap().scale(&Poly::from_ratio(1, 2))
        );
        assert_eq!(
            br(&a, "vm", "vm"),
            a.generator("Xm").unwrap().scale(&Poly::from_ratio(-1, 2))
        );
        assert_eq!(
            br(&a, "h", "Xp"),
            a.generator("Xp").unwrap().scale(&Poly::from_int(2))
        );
        assert_eq!(br(&a, "Xp", "Xm"), a.generator("h").unwrap());
        assert_eq!(br(&a, "Xp", "vm"), a.generator("vp").unwrap());
        assert_eq!(br(&a, "Xm", "vp"), a.generator("vm").unwrap());
        assert!(a.verify_jacobi().passed());
    }

    #[test]
    fn dual_tables() {
        let m1 = make_mu1star();
        let m2 = make_mu2star();
        assert_eq!(
            br(&m1, "hat_h", "hat_Xp"),
            m1.generator("hat_Xp").unwrap().scale(&Poly::from_int(-2))
        );
        assert_eq!(
            br(&m2, "hat_vp", "hat_vp"),
            m2.generator("hat_h").unwrap().scale(&Poly::from_int(4))
        );
        let psi = make_psi();
        assert_eq!(
            psi.image(0),
            m1.generator("hat_Xp").unwrap().neg()
        );
    }
}
