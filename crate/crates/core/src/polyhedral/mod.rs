//! Rational polyhedral cones, classic fans and normal fans of polytopes.

mod cone;
mod fan;
mod hilbert;
mod polytope;

pub use cone::{dual_cone, face_index_sets, Cone, Decomposition};
pub use fan::{validate_classic_fan, ClassicFan, FanValidation, FanViolation};
pub use hilbert::{hilbert_basis, is_reducible, lattice_point_generators};
pub use polytope::{normal_fan, NormalFan, Polytope};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedralError {
    #[error("cone {0} is not strongly convex")]
    NotStronglyConvex(String),
    #[error("not a fan: {0}")]
    InvalidFan(FanViolation),
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
