use thiserror::Error;

/// Errors raised by the core library.
///
/// Every precondition violation gets its own variant so callers (and the CLI)
/// can report exactly which contract was broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed simplex {simplex:?}: repeated vertex {vertex}")]
    MalformedSimplex { simplex: Vec<usize>, vertex: usize },
    #[error("vertex {vertex} out of range for a complex on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("empty simplex in facet list")]
    EmptySimplex,
    #[error("boundary degree {k} out of range 1..={dim}")]
    DegreeOutOfRange { k: usize, dim: usize },
    #[error("complex is not a pseudomanifold: {0}")]
    NotPseudomanifold(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("complex is non-orientable")]
    NonOrientable,
    #[error("expected a complex of dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("search budget exhausted after {attempts} attempts")]
    BudgetExhausted { attempts: usize },
    #[error("graph is not {expected}-regular (vertex {vertex} has degree {degree})")]
    NotRegular { expected: usize, vertex: usize, degree: usize },
    #[error("girth {girth} does not exceed the threshold 1/(2 eps) = {threshold}")]
    GirthTooSmall { girth: String, threshold: String },
    #[error("vertex count {count} outside the window [{min}, {max}]")]
    OutsideWindow { count: usize, min: String, max: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("input of {value} exceeds the configured limit {limit}")]
    LimitExceeded { value: u64, limit: u64 },
    #[error("sequence too short: need at least {needed} terms, got {got}")]
    SequenceTooShort { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
