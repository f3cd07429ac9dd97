//! Graded vector spaces, tensors with Koszul signs, and Lie superalgebras
//! given by structure constants.

mod algebra;
mod basis;
mod tensor;

pub use algebra::{BracketTable, JacobiReport, LieSuperAlgebra, LinComb};
pub(crate) use algebra::{lincomb_from, lincomb_of};
pub use basis::{GradedBasis, Parity};
pub use tensor::{slots, wedge, Slots, TensorElement};
