use thiserror::Error;

/// Errors raised by table validation, preconditions and resource caps.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("trivial algebra: at least two elements are required")]
    Trivial,
    #[error("duplicate element name '{0}'")]
    DuplicateElement(String),
    #[error("{field}: '{name}' is not an element")]
    UnknownElement { field: String, name: String },
    #[error("wrong dimensions: {0}")]
    Dimension(String),
    #[error("{n} elements exceed the configured cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("BE2 violated: {x} -> {one} is not {one}")]
    Be2Violation { x: String, one: String },
    #[error("BE3 violated: {one} -> {x} is not {x}")]
    Be3Violation { x: String, one: String },
    #[error("declared zero '{zero}' is not a lower bound: {zero} -> {x} is not the top")]
    NotLowerBound { zero: String, x: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no lattice bound: {0}")]
    NotLattice(String),
    #[error("unknown axiom '{0}'")]
    UnknownAxiom(String),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("resource cap reached: {0}")]
    ResourceCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
