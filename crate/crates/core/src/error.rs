use thiserror::Error;

use crate::algebra::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable {0} is not assigned")]
    UnassignedVariable(String),
    #[error("assignment values share variable {0}")]
    VariableClash(String),
    #[error("identity {0} is not multilinear")]
    NotMultilinear(String),
    #[error("operation {op} expects {expected} arguments, got {got}")]
    Arity { op: String, expected: usize, got: usize },
    #[error("rewrite rules did not reach a fixed point after {0} passes (cyclic rule set?)")]
    CyclicRules(usize),
    #[error("degree {degree} is not expressible with the signature {signature}")]
    DegreeNotExpressible { degree: usize, signature: String },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("lifting by {0} degrees is not supported (only one)")]
    UnsupportedLift(usize),
    #[error("monomial {0} lies outside the ambient basis")]
    OutsideBasis(String),
    #[error("letter {0} occurs in both factors")]
    LetterClash(String),
    #[error("degree {0} exceeds the supported maximum of 5")]
    DegreeTooLarge(usize),
    #[error("expected a single {expected} operation, found {found}")]
    WrongSignature { expected: String, found: String },
    #[error("unknown replay section {0:?}")]
    UnknownSection(String),
    #[error("search mask is empty")]
    EmptyMask,
    #[error("search space of {0} candidates exceeds the limit of 10^8")]
    MaskTooLarge(String),
    #[error("unknown unknown {0:?} in mask")]
    UnknownUnknown(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid structure constants: {0}")]
    InvalidSystem(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
