//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Smith and Hermite
//! normal forms, integer kernels, sublattices with coordinate maps, and the
//! grading-bounded nonnegative solver used for monoid membership.

mod matrix;
mod normal_form;
mod solve;
mod sublattice;
mod vector;

pub use matrix::IntMatrix;
pub use normal_form::{
    hermite_normal_form, kernel_basis, smith_normal_form, unimodular_inverse, HermiteForm, SmithForm,
};
pub use solve::{solve_nonneg, GradedSearch};
pub use sublattice::{saturated_span, Sublattice};
pub use vector::IntVector;

pub use num_bigint::BigInt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("grading is not strictly positive on generator {index}")]
    NoPositiveGrading { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Builds an [`IntVector`] from integer literals.
#[macro_export]
macro_rules! ivec {
    ($($x:expr),* $(,)?) => {
        $crate::lattice::IntVector::from_i64s(&[$($x as i64),*])
    };
}
