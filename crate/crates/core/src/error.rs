use thiserror::Error;

/// Errors raised while constructing or evaluating quantum and classical objects.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("not Hermitian (max |a_ij - conj(a_ji)| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error(
        "eigendecomposition did not converge (dim {dim}, ||A||_F = {frobenius:e}, \
         spectral spread estimate {spread:e})"
    )]
    NoConvergence {
        dim: usize,
        frobenius: f64,
        spread: f64,
    },

    #[error("probability vector invalid: {0}")]
    InvalidProbabilities(String),

    #[error("effects do not sum to the identity (deviation {0:e})")]
    NotComplete(f64),

    #[error("Kraus operators are not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("vector is not normalized (norm {0})")]
    NotUnit(f64),

    #[error("Bloch vector outside the unit ball (norm {0})")]
    OutsideBlochBall(f64),

    #[error("ensemble must contain at least one state")]
    EmptyEnsemble,

    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    #[error("unsupported dimension {0}: only qubits (dimension 2) are supported here")]
    UnsupportedDimension(usize),

    #[error("block matrix dimension {0} exceeds the cap of {1}")]
    DimensionCap(usize, usize),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("malformed ensemble file: {0}")]
    Format(String),

    #[error("cannot parse ensemble file at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
