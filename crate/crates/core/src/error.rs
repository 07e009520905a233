use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("zero polynomial has no monomial normalization")]
    ZeroPolynomial,
    #[error("division by zero during evaluation")]
    DivisionByZero,
    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("operation needs a permutation of positive degree")]
    EmptyPermutation,
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("recursion state invariant violated: {0}")]
    InvariantViolation(String),
    #[error("malformed base case: {0}")]
    MalformedBase(String),
    #[error("recursion exceeded depth bound {0}")]
    DepthExceeded(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("infinite-dimensional (link)")]
    InfiniteDimension,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("need at least {needed} consecutive samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
