//! Jordanian and extended twists, the twist equation, `R = F_21 F^{-1}`,
//! the quantum Yang–Baxter residual and the classical limit.

use std::sync::Arc;

use crate::catalog::{make_borel, make_sl, SlLayout};
use crate::error::{Error, Result};
use crate::lie::{slots, TensorElement};
use crate::scalar::{Poly, TruncationOrder};

use super::pbw::{Pbw, UeaElement};
use super::tensor::TensorUea;

/// Truncation used by every twist: total degree in `xi`.
pub fn twist_order(degree: u32) -> TruncationOrder {
    TruncationOrder::new(degree, &["xi"])
}

fn xi() -> Poly {
    Poly::param("xi")
}

/// `σ = ½ log(1 + 2ξ x)`.
pub fn sigma(x: &UeaElement) -> Result<UeaElement> {
    Ok(x
        .scale(&xi().scale(&crate::scalar::int(2)))
        .log_trunc()?
        .scale(&Poly::from_ratio(1, 2)))
}

/// `exp(h ⊗ σ)` with `σ = ½ log(1 + 2ξ x)`, for generators `h`, `x` of
/// any algebra over `pbw`.
pub fn jordanian_factor(pbw: &Arc<Pbw>, order: &TruncationOrder, h: &str, x: &str) -> Result<TensorUea> {
    let h = UeaElement::generator(pbw, order, h)?;
    let x = UeaElement::generator(pbw, order, x)?;
    TensorUea::from_legs(&[&h, &sigma(&x)?])?.exp_trunc()
}

/// Jordanian twist on the Borel algebra `{h, x | [h, x] = 2x}`.
pub fn build_jordanian_twist(degree: u32) -> Result<TensorUea> {
    let pbw = Pbw::new(make_borel());
    jordanian_factor(&pbw, &twist_order(degree), "h", "x")
}

/// `H = E_11 − E_NN` as the sum of the Cartan generators.
fn long_cartan(pbw: &Arc<Pbw>, order: &TruncationOrder, layout: &SlLayout) -> Result<UeaElement> {
    let mut out = UeaElement::zero(pbw, order);
    for k in 1..layout.n {
        out = out.add(&UeaElement::basis_element(pbw, order, layout.cartan(k)))?;
    }
    Ok(out)
}

fn sl_guard(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::usage("the extended twist needs N ≥ 3"));
    }
    Ok(())
}

struct ExtendedPieces {
    pbw: Arc<Pbw>,
    order: TruncationOrder,
    /// `H_1N ⊗ σ` as a rank-2 tensor.
    h_sigma: TensorUea,
    /// `E_1i ⊗ E_iN e^{−σ}` for `i = 2..N−1`.
    chain: Vec<TensorUea>,
}

fn extended_pieces(n: usize, degree: u32) -> Result<ExtendedPieces> {
    sl_guard(n)?;
    let layout = SlLayout::new(n);
    let pbw = Pbw::new(make_sl(n)?);
    let order = twist_order(degree);
    let gen = |i: usize, j: usize| UeaElement::basis_element(&pbw, &order, layout.unit(i, j));
    let x = gen(1, n);
    let s = sigma(&x)?;
    let damp = s.neg().exp_trunc()?;
    let h = long_cartan(&pbw, &order, &layout)?;
    let h_sigma = TensorUea::from_legs(&[&h, &s])?;
    let mut chain = Vec::new();
    for i in 2..n {
        let right = gen(i, n).mul(&damp)?;
        chain.push(TensorUea::from_legs(&[&gen(1, i), &right])?);
    }
    Ok(ExtendedPieces {
        pbw,
        order,
        h_sigma,
        chain,
    })
}

/// `exp{2ξ Σ_i E_1i ⊗ E_iN e^{−σ}} exp{H ⊗ σ}` on sl(N), with `x = E_1N`,
/// `H = E_11 − E_NN`.
pub fn build_extended_twist(n: usize, degree: u32) -> Result<TensorUea> {
    let p = extended_pieces(n, degree)?;
    let mut sum = TensorUea::zero(&p.pbw, &p.order, 2);
    for c in &p.chain {
        sum = sum.add(c)?;
    }
    let two_xi = xi().scale(&crate::scalar::int(2));
    sum.scale(&two_xi).exp_trunc()?.mul(&p.h_sigma.exp_trunc()?)
}

/// `F = 1⊗1 + ξ x⊗x` on the Borel algebra: not a twist.
pub fn build_non_twist(degree: u32) -> Result<TensorUea> {
    let pbw = Pbw::new(make_borel());
    let order = twist_order(degree);
    let x = UeaElement::generator(&pbw, &order, "x")?;
    let xx = TensorUea::from_legs(&[&x, &x])?.scale(&xi());
    TensorUea::one(&pbw, &order, 2).add(&xx)
}

fn require_unit(f: &TensorUea) -> Result<()> {
    let rest = f.sub(&TensorUea::one(f.pbw(), f.order(), f.rank()))?;
    if rest.is_deformation_positive() {
        Ok(())
    } else {
        Err(Error::unsupported(
            "twist must be 1⊗1 plus deformation-positive terms",
        ))
    }
}

/// `F_12 (Δ⊗id)F − F_23 (id⊗Δ)F`.
pub fn twist_cocycle_check(f: &TensorUea) -> Result<TensorUea> {
    if f.rank() != 2 {
        return Err(Error::usage("a twist is a rank-2 tensor"));
    }
    require_unit(f)?;
    let left = f.embed(0, 1)?.mul(&f.coproduct_at(0)?)?;
    let right = f.embed(1, 2)?.mul(&f.coproduct_at(1)?)?;
    left.sub(&right)
}

/// `R = F_21 F^{-1}`.
pub fn universal_r(f: &TensorUea) -> Result<TensorUea> {
    require_unit(f)?;
    f.flip()?.mul(&f.inverse()?)
}

/// `R_12 R_13 R_23 − R_23 R_13 R_12`.
pub fn qybe_check(r: &TensorUea) -> Result<TensorUea> {
    if r.rank() != 2 {
        return Err(Error::usage("R must be a rank-2 tensor"));
    }
    let (r12, r13, r23) = (r.embed(0, 1)?, r.embed(0, 2)?, r.embed(1, 2)?);
    r12.mul(&r13)?.mul(&r23)?.sub(&r23.mul(&r13)?.mul(&r12)?)
}

/// First-order part of `R − 1⊗1` as a tensor over the Lie algebra.
pub fn classical_limit(r: &TensorUea) -> Result<TensorElement> {
    if r.rank() != 2 {
        return Err(Error::usage("R must be a rank-2 tensor"));
    }
    let first = r
        .sub(&TensorUea::one(r.pbw(), r.order(), 2))?
        .homogeneous(1);
    let basis = r.pbw().algebra().basis().clone();
    let mut out = TensorElement::zero(basis, 2);
    for (legs, c) in first.terms() {
        let (Some(a), Some(b)) = (legs[0].as_generator(), legs[1].as_generator()) else {
            let names = r.pbw().names();
            return Err(Error::Structural(format!(
                "first order of R contains {} (x) {}, not a Lie tensor",
                legs[0].render(names),
                legs[1].render(names)
            )));
        };
        out.add_term(slots(&[a, b]), c.clone());
    }
    Ok(out)
}

/// Counit in either leg of a rank-2 tensor, each as an element.
pub fn counit_legs(f: &TensorUea) -> Result<(UeaElement, UeaElement)> {
    Ok((f.counit_at(0)?.into_element()?, f.counit_at(1)?.into_element()?))
}

/// The product form `∏ exp(2ξ E_jN e^{−σ} ⊗ E_1j) · exp(σ ⊗ H) ·
/// exp(−H ⊗ σ) · ∏ exp(−2ξ E_1j ⊗ E_jN e^{−σ})`, each factor exponentiated
/// on its own.
pub fn factored_r(n: usize, degree: u32) -> Result<TensorUea> {
    let p = extended_pieces(n, degree)?;
    let two_xi = xi().scale(&crate::scalar::int(2));
    let mut out = TensorUea::one(&p.pbw, &p.order, 2);
    for c in &p.chain {
        out = out.mul(&c.flip()?.scale(&two_xi).exp_trunc()?)?;
    }
    out = out.mul(&p.h_sigma.flip()?.exp_trunc()?)?;
    out = out.mul(&p.h_sigma.neg().exp_trunc()?)?;
    for c in &p.chain {
        out = out.mul(&c.scale(&-two_xi.clone()).exp_trunc()?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FactoredComparison {
    pub equal: bool,
    /// Lowest order in `ξ` where the two sides differ.
    pub failing_order: Option<u32>,
    pub difference: Vec<String>,
}

/// Compares the product form with `universal_R(build_extended_twist(n, D))`.
pub fn factored_r_compare(n: usize, degree: u32) -> Result<FactoredComparison> {
    let f = build_extended_twist(n, degree)?;
    let via_twist = universal_r(&f)?;
    // both sides must live over one enveloping algebra instance
    let product = rebase(&factored_r(n, degree)?, &via_twist)?;
    let diff = product.sub(&via_twist)?;
    let failing_order = diff.low_degree();
    Ok(FactoredComparison {
        equal: diff.is_zero(),
        failing_order,
        difference: match failing_order {
            Some(d) => diff.homogeneous(d).render_lines(8),
            None => Vec::new(),
        },
    })
}

/// Copies the terms of `t` onto the enveloping algebra instance of `like`.
pub fn rebase(t: &TensorUea, like: &TensorUea) -> Result<TensorUea> {
    if t.pbw().algebra() != like.pbw().algebra() {
        return Err(Error::usage("rebase across different algebras"));
    }
    let mut out = TensorUea::zero(like.pbw(), like.order(), t.rank());
    for (l, c) in t.terms() {
        out.add_term(l.clone(), c.clone());
    }
    Ok(out)
}
