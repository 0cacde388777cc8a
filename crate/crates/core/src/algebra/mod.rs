//! The monoid algebra `A[S]` as data: binomial presentations of single
//! charts and the atlas of charts glued along localizations.

mod atlas;
mod presentation;

pub use atlas::{chart_overlap, scheme_atlas, Chart, LaurentMonomial, Overlap, OverlapKind, SchemeAtlas};
pub use presentation::{monoid_algebra, AlgebraPresentation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree bound must be at least 1")]
    ZeroDegree,
    #[error("not a fan: {0}")]
    NotAFan(String),
    #[error("space is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("no chart with index {0}")]
    UnknownChart(usize),
    #[error("charts {0} and {1} do not overlap")]
    NoOverlap(usize, usize),
    #[error("overlap of charts {first} and {second} is not affine: maximal points {maximal:?}")]
    NonAffineOverlap { first: usize, second: usize, maximal: Vec<String> },
}
