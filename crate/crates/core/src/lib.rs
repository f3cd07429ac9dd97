//! Exact-arithmetic workbench for Lie (super)bialgebras.
//!
//! The crate builds Lie superalgebras from structure constants, analyses
//! classical r-matrices (Schouten bracket, CYBE / modified CYBE), computes
//! cobrackets and dual algebras, solves Chevalley–Eilenberg coboundary
//! problems over the field of rational functions in the deformation
//! parameters, and expands Drinfeld twists in a PBW-truncated universal
//! enveloping algebra. Everything is exact: rationals and polynomials in
//! named parameters, never floating point.

pub mod bialgebra;
pub mod catalog;
pub mod cohomology;
pub mod dsl;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod suite;
pub mod uea;

pub use error::{Error, Result};
pub use lie::{GradedBasis, LieSuperAlgebra, Parity, TensorElement};
pub use scalar::{ParamPolynomial, Poly, Rational};
