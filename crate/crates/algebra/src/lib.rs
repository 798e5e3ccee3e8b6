//! Exact sparse polynomial arithmetic and a Buchberger Gröbner engine over
//! prime fields and the rationals, with weighted gradings.

pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod random;
pub mod ring;
pub mod univariate;
pub mod zerodim;

pub use field::{Field, PrimeField, RationalField, DEFAULT_PRIME};
pub use groebner::{GroebnerBasis, Ideal};
pub use hilbert::HilbertSeries;
pub use matrix::PolyMatrix;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::Polynomial;
pub use ring::Ring;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("exponent overflow (exponents are limited to 255)")]
    ExponentOverflow,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("invalid matrix shape: {0}")]
    Shape(String),
    #[error("expected a zero-dimensional ideal, got Krull dimension {0}")]
    NotZeroDimensional(usize),
    #[error("operation requires a homogeneous ideal")]
    Inhomogeneous,
    #[error("no element of degree {0} in the ideal")]
    EmptyDegree(u32),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
