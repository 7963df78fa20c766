//! Finite-dimensional n-normed spaces over a generic scalar.
//!
//! The standard n-norm is the volume spanned by `n` vectors, the square root
//! of their Gram determinant. Fixing a linearly independent frame
//! `y_1, …, y_n` gives quotient norms `‖·‖*_s` for index sets `s`, and the
//! [`topology`] module studies sequences through collections of those norms.
//!
//! Everything is generic over [`scalar::Scalar`]; the aliases below fix the
//! common choices.

pub mod error;
pub mod linalg;
pub mod nnorm;
pub mod quotient;
pub(crate) mod sampling;
pub mod scalar;
pub mod topology;

pub use error::{Error, Result};
pub use num_rational::BigRational;

pub type Vector64 = linalg::Vector<f64>;
pub type Matrix64 = linalg::SquareMatrix<f64>;
pub type Space64 = linalg::SpaceConfig<f64>;
pub type NNorm64 = nnorm::NNorm<f64>;
pub type Frame64 = quotient::Frame<f64>;
pub type Sequence64 = topology::SequenceSpec<f64>;
pub type Verdict64 = topology::Verdict<f64>;

pub type Vector32 = linalg::Vector<f32>;
pub type Matrix32 = linalg::SquareMatrix<f32>;
pub type Space32 = linalg::SpaceConfig<f32>;
pub type NNorm32 = nnorm::NNorm<f32>;
pub type Frame32 = quotient::Frame<f32>;

/// Exact rational arithmetic; Gram determinants and ranks are computed
/// without rounding. The n-norm itself needs [`scalar::Real`].
pub type ExactVector = linalg::Vector<BigRational>;
pub type ExactMatrix = linalg::SquareMatrix<BigRational>;
pub type ExactSpace = linalg::SpaceConfig<BigRational>;
pub type ExactFrame = quotient::Frame<BigRational>;
