use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("isotropic mirror: <b,b> = 0")]
    IsotropicMirror,
    #[error("{0} is not a nontrivial sixth root of unity")]
    NotAUnit(String),
    #[error("matrix entry {0} is not an Eisenstein integer")]
    NonIntegralEntry(String),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("label {label} outside 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("negative argument {0}")]
    NegativeArgument(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point is not singular on the variety")]
    NotSingular,
    #[error("both gradients vanish; the degenerate combination is not unique")]
    AmbiguousCombination,
    #[error("not an automorphism of the cubic pair: {0}")]
    NotAnAutomorphism(String),
    #[error("point leaves the chart (|j| = {0:e})")]
    OutsideChart(f64),
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
