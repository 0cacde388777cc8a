//! Commutative monoids: affine monoids embedded in a lattice, and finitely
//! presented monoids with bounded cancellativity and torsion checks.

mod affine;
mod iso;
mod presented;

pub use affine::{AffineMonoid, PrimeIdeal};
pub use iso::IsoSearch;
pub use presented::{
    words_up_to, Affinization, AffinizeFailure, Bounded, BoundedCongruence, CancellativityWitness, PresentedMonoid,
    TorsionWitness,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("{element} is not an element of {monoid}")]
    NotAMember { element: String, monoid: String },
    #[error("{0} is not a prime of the monoid")]
    InvalidPrime(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not an irreducible element")]
    NotIrreducible(String),
    #[error("operation needs a monoid without nontrivial units")]
    HasUnits,
}
