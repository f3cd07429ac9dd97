//! PBW-truncated universal enveloping algebras, their tensor powers, and
//! twists.

mod pbw;
mod tensor;
mod twist;

pub use pbw::{rewrite_word, Pbw, PbwMonomial, RewriteOrder, UeaElement};
pub use tensor::{coproduct, coproduct_monomial, Legs, TensorUea};
pub use twist::{
    build_extended_twist, build_jordanian_twist, build_non_twist, classical_limit, counit_legs,
    factored_r, factored_r_compare, jordanian_factor, qybe_check, rebase, sigma, twist_cocycle_check,
    twist_order, universal_r, FactoredComparison,
};
