//! Classical shadow of the quantum double of two Borel algebras.

use std::sync::Arc;

use crate::lie::{slots, GradedBasis, LieSuperAlgebra, TensorElement};
use crate::scalar::Poly;

pub struct DoublePieces {
    pub g1: LieSuperAlgebra,
    pub g2: LieSuperAlgebra,
    pub g1_dual: LieSuperAlgebra,
    pub g2_dual: LieSuperAlgebra,
    /// `θ(X₊⊗X₋ + H⊗H′)`.
    pub r: TensorElement,
}

pub fn double_basis() -> Arc<GradedBasis> {
    GradedBasis::even(["H", "Hp", "Xp", "Xm"])
        .expect("static basis")
        .shared()
}

pub fn make_double_pieces() -> DoublePieces {
    let basis = double_basis();
    let dual = basis.dual().shared();
    let one = Poly::one;
    let m1 = || Poly::from_int(-1);
    let theta = Poly::param("theta");

    let g1 = LieSuperAlgebra::from_named(
        "double.g1",
        basis.clone(),
        &[
            ("H", "Xp", &[("Xp", one())]),
            ("H", "Xm", &[("Xm", m1())]),
            ("Xp", "Xm", &[("Hp", one())]),
        ],
    )
    .expect("static table");
    let g2 = LieSuperAlgebra::from_named(
        "double.g2",
        basis.clone(),
        &[
            ("Hp", "Xp", &[("Xp", one())]),
            ("Hp", "Xm", &[("Xm", m1())]),
            ("Xp", "Xm", &[("H", one())]),
        ],
    )
    .expect("static table");
    let g1_dual = LieSuperAlgebra::from_named(
        "double.g1dual",
        dual.clone(),
        &[("hat_Hp", "hat_Xm", &[("hat_Xm", -&theta)])],
    )
    .expect("static table");
    let g2_dual = LieSuperAlgebra::from_named(
        "double.g2dual",
        dual,
        &[("hat_H", "hat_Xp", &[("hat_Xp", -&theta)])],
    )
    .expect("static table");
    let r = TensorElement::from_terms(
        basis,
        2,
        [
            (slots(&[2, 3]), theta.clone()),
            (slots(&[0, 1]), theta.clone()),
        ],
    );
    DoublePieces {
        g1,
        g2,
        g1_dual,
        g2_dual,
        r,
    }
}

/// `α₁g₁ + α₂g₂` with formal `a1`, `a2`.
pub fn make_double_pencil() -> LieSuperAlgebra {
    let p = make_double_pieces();
    LieSuperAlgebra::pencil(&p.g1, &p.g2, &Poly::param("a1"), &Poly::param("a2"))
        .expect("shared basis")
        .with_name("double.pencil")
}

/// `α₁g₁* + α₂g₂*`.
pub fn make_double_dual_pencil() -> LieSuperAlgebra {
    let p = make_double_pieces();
    LieSuperAlgebra::pencil(
        &p.g1_dual,
        &p.g2_dual,
        &Poly::param("a1"),
        &Poly::param("a2"),
    )
    .expect("shared basis")
    .with_name("double.pencil.dual")
}
