//! Exact rational linear algebra with a floating fallback path.

pub mod field;
pub mod jordan;
pub mod matrix;
pub mod poly;

pub use field::{exact_sqrt, format_rational, parse_rational, q, qi, rationalize, Field, Mode, Q, FLOAT_TOL};
pub use jordan::{JordanSplit, Spectral};
pub use matrix::Matrix;
pub use poly::Poly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("spectrum outside the supported field: {0}")]
    IrrationalSpectrum(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("internal linear algebra failure: {0}")]
    Internal(String),
}

/// Canonical kernel basis of `m`.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.nullspace()
}

pub fn jordan_chevalley<F: Spectral>(m: &Matrix<F>) -> Result<JordanSplit<F>, LinAlgError> {
    F::jordan_chevalley(m)
}

/// Number of distinct real roots of `p`.
pub fn real_root_count(p: &Poly) -> Result<usize, LinAlgError> {
    p.real_root_count()
}
