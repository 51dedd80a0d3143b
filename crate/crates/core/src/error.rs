use thiserror::Error;

/// Failures raised by the certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined on a constant polynomial")]
    ConstantPolynomial,
    #[error("interval endpoint is a root; perturb it")]
    EndpointIsRoot,
    #[error("constant term is zero; strip the power of X first")]
    ZeroConstantTerm,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("complex root iteration did not converge at precision {0}")]
    ConvergenceFailure(u64),
    #[error("a complex root could not be matched with its conjugate")]
    UnpairedRoot,
    #[error("polynomial is not strictly positive (it has a real root)")]
    NotPositive,
    #[error("polynomial is not nonnegative: {0}")]
    NotNonnegative(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("remainder degree exceeds 2k-1 (first square is not monic)")]
    DegreeOverflow,
    #[error("assembled weight is negative")]
    NegativeWeight,
    #[error("need at least {needed} evaluation points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("duplicate evaluation point {0}")]
    DuplicatePoint(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("empty interval: lower bound must be below upper bound")]
    EmptyInterval,
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
