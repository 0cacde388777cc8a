//! Monoided spaces on finite posets: spectra of affine monoids, spaces of
//! classic fans, gluing, the locally-`Spec` test, sections and isomorphism.
//!
//! Convention: `p <= q` when `p` is a generization of `q` (for primes,
//! `p ⊆ q`; for cones, `p` is a face of `q`). Open sets are down-sets and
//! the smallest open neighbourhood of `q` is `↓q`.

mod build;
mod fan_check;
mod iso;
mod sections;
mod space;

#[cfg(test)]
mod tests;

pub use build::{basic_open, from_classic_fan, polytope_face_space, spec, PolytopeFaceSpace};
pub use fan_check::{is_fan, FanCertificate, FanFailure, PointCertificate};
pub use iso::{find_isomorphism, is_local_hom, iso_check, MonoidMorphismData, SpaceIsomorphism};
pub use sections::{glue, sections, Identification};
pub use space::MonoidedSpace;

use thiserror::Error;

use crate::monoid::MonoidError;
use crate::polyhedral::PolyhedralError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("point {0} listed twice")]
    DuplicatePoint(String),
    #[error("{points} points but {stalks} stalks")]
    StalkCount { points: usize, stalks: usize },
    #[error("order is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("no map from {from} to {to}")]
    MissingGenMap { from: String, to: String },
    #[error("bad map from {from} to {to}: {reason}")]
    BadGenMap { from: String, to: String, reason: String },
    #[error("maps from {from} to {to} along different chains disagree")]
    InconsistentComposite { from: String, to: String },
    #[error("set is not open")]
    NotOpen,
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("incompatible identification: {0}")]
    IncompatibleIdentification(String),
    #[error("ill-formed morphism: {0}")]
    IllFormedMorphism(String),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}
