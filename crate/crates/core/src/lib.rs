//! Finite-dimensional operator algebra toolkit.
//!
//! The crate works over complex matrices whose real and imaginary parts are
//! any [`Real`] (`f32` or `f64`). Modules:
//!
//! * [`linalg`]: dense kernel (eigen/SVD, pseudoinverse, square roots,
//!   range projections, Loewner order, subspaces).
//! * [`douglas`]: range-inclusion / majorization / factorization `A = CB`,
//!   partial-isometry factors and polar decomposition.
//! * [`ideals`]: principal left ideals of matrix *-algebras.
//! * [`commutative`]: functions on the convergent sequence `{0} ∪ {1/n}`,
//!   weak polar decomposition and quotient extension.
//! * [`convex`]: C*-convex combinations over `M_d`-bimodules, reduction of
//!   n-term combinations to two-term segment programs, matrix ranges.
//! * [`json`]: the JSON exchange formats.

pub mod commutative;
pub mod convex;
pub mod douglas;
pub mod error;
pub mod ideals;
pub mod json;
pub mod linalg;
pub mod random;
mod scalar;

pub use error::{Error, Result};
pub use linalg::{Matrix, Tolerance};
pub use scalar::{Cx, Real};

/// Double-precision complex matrix.
pub type Matrix64 = Matrix<f64>;
/// Single-precision complex matrix.
pub type Matrix32 = Matrix<f32>;
pub type Tolerance64 = Tolerance<f64>;
pub type Tolerance32 = Tolerance<f32>;
pub type Complex64 = Cx<f64>;
pub type SequenceFunction64 = commutative::SequenceFunction<f64>;
pub type BimoduleElement64 = convex::BimoduleElement<f64>;
pub type SegmentProgram64 = convex::SegmentProgram<f64>;
