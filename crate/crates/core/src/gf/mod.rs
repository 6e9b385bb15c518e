//! Exact arithmetic in GF(2^k) and linear algebra over it.

mod field;
mod matrix;

pub use field::{modulus_for, Fel, Field, FieldScalar, Gf, Tables};
pub use matrix::{canonical_basis, same_span, span_rank, FieldMatrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("extension degree {0} not supported (expected 1..=8)")]
    UnsupportedDegree(u8),
    #[error("bit pattern {bits} out of range for GF(2^{k})")]
    OutOfRange { bits: u16, k: u8 },
    #[error("operands from different fields GF(2^{left}) and GF(2^{right})")]
    MixedFields { left: u8, right: u8 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
    #[error("entry {0} is not in the prime field")]
    NotPrime(u8),
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("power must be at least 1")]
    ZeroPower,
}
