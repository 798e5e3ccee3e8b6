//! Nodal Calabi–Yau complete intersections through del Pezzo surfaces:
//! surface catalog, node counting by three routes, Chern and Schubert
//! calculus, and the Euler characteristic bookkeeping for the contractions.

pub mod catalog;
pub mod chow;
pub mod nodal;
pub mod numerics;
pub mod runner;

use cy_algebra::AlgebraError;
use thiserror::Error;

/// Coefficient field used for every construction.
pub type Fp = cy_algebra::PrimeField;
pub type Poly = cy_algebra::Polynomial<Fp>;
pub type Ideal = cy_algebra::Ideal<Fp>;
pub type RingRef = std::sync::Arc<cy_algebra::Ring<Fp>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("generic complete intersection meets the ambient singular locus")]
    AmbientSingularities,
    #[error("unknown row {0}")]
    UnknownRow(String),
    #[error("degenerate construction: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
