use thiserror::Error;

/// Errors raised by the library. The CLI maps variants onto exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vector is not in the root lattice (pairs nontrivially with K_S)")]
    NotInLattice,
    #[error("root index {0} out of range")]
    BadRootIndex(usize),
    #[error("gcd undefined: both polynomials are zero")]
    GcdUndefined,
    #[error("resultant undefined: {0}")]
    ResultantUndefined(String),
    #[error("transvectant index {k} exceeds form degrees ({d1}, {d2})")]
    TransvectantIndex { k: usize, d1: usize, d2: usize },
    #[error("unrecognized diagram: {0}")]
    UnrecognizedDiagram(String),
    #[error("unsupported root system type: {0}")]
    UnsupportedType(String),
    #[error("point lies outside the closed alcove")]
    OutsideAlcove,
    #[error("not in T^rss: character lies on the hyperplane of root {0}")]
    NotRegularSemisimple(String),
    #[error("character mode does not match curve kind")]
    ModeMismatch,
    #[error("degenerate parameter: {0}")]
    Degenerate(String),
    #[error("configuration not in general position: {0}")]
    GeneralPosition(String),
    #[error("non-generic ring basis: relation kernel has dimension {0}")]
    NonGenericRingBasis(usize),
    #[error("hyperelliptic degeneration: f0 vanishes")]
    HyperellipticDegeneration,
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
