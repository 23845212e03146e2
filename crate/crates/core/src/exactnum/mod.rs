//! Exact scalar arithmetic and dense linear algebra.
//!
//! Everything above this layer works in coordinates made of [`Scalar`]s, so
//! the same code runs over the rationals and over a quadratic extension.

mod matrix;
mod scalar;
mod subspace;
pub mod univariate;

pub use matrix::{Echelon, Matrix, Vector};
pub use scalar::{common_field, dot, QuadraticField, Scalar};
pub use subspace::Subspace;


use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("scalars from incompatible quadratic extensions")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("extension element given but no quadratic field is in scope")]
    NoField,
    #[error("polynomial is reducible over the rationals (discriminant {0})")]
    ReducibleQuadratic(String),
    #[error("expected a monic quadratic")]
    NotMonicQuadratic,
    #[error("expected a rational value")]
    NotRational,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
