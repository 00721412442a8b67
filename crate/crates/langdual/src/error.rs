use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("symmetrizer does not map cocharacters into characters: {0}")]
    SymmetrizerMismatch(String),
    #[error("vector is not in the lattice: {0}")]
    LatticeError(String),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("variable context mismatch: {0}")]
    VariableContextError(String),
    #[error("expression is not subtraction-free: {0}")]
    NotSubtractionFree(String),
    #[error("index {0} is not exchangeable")]
    NotExchangeable(i64),
    #[error("no mutation path within depth {0}")]
    NotFound(usize),
    #[error("no representation registered for fundamental weight {0}")]
    UnsupportedWeight(usize),
    #[error("element is not Gaussian decomposable: {0}")]
    NotDecomposable(String),
    #[error("point is not in the cone: {0}")]
    NotInCone(String),
    #[error("bracket matrix does not factor as D*B': {0}")]
    TheoremSymViolation(String),
    #[error("weight is not quantizable: {0}")]
    NotQuantizable(String),
    #[error("coweight is not regular: {0}")]
    NotRegular(String),
    #[error("witness too close to the walls: {0}")]
    InconclusiveWitness(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
