//! Spectra of commutative monoids and the fans built from them.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: exact integer linear algebra (normal forms, kernels,
//!   sublattices, graded nonnegative search).
//! * [`polyhedral`]: rational cones, duals, faces, Hilbert bases, classic fans
//!   and normal fans of lattice polytopes.
//! * [`monoid`]: affine monoids with units, primes, localization and
//!   saturation; presented monoids with bounded cancellativity and
//!   torsion checks.
//! * [`fanspace`]: monoided spaces on finite posets: `Spec S`, spaces of
//!   classic fans, gluing, the locally-`Spec` test, sections and isomorphism.
//! * [`algebra`]: binomial presentations of monoid algebras and chart atlases
//!   for glued schemes.
//! * [`classify`]: decides whether the scheme of a fan is a classic toric
//!   variety and reconstructs the fan when it is.
//!
//! All arithmetic is exact; no floating point is used anywhere.

// elimination loops read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod classify;
pub mod corpus;
pub mod fanspace;
pub mod lattice;
pub mod monoid;
pub mod par;
pub mod polyhedral;

pub use lattice::{BigInt, IntMatrix, IntVector};
