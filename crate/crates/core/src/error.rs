use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arithmetic overflow in integer coefficient")]
    Overflow,
    #[error("{what} size {n} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("upper vertex {0} is unmatched")]
    UnmatchedVertex(usize),
    #[error("vertex {vertex} is out of range for degree {degree}")]
    VertexOutOfRange { vertex: usize, degree: usize },
    #[error("edge e_{0} is not homogeneous")]
    InhomogeneousEdge(usize),
    #[error("moment table covers degree {available}, but degree {needed} is required")]
    TableTooShort { needed: usize, available: usize },
    #[error("negative exponent {0} produced by a statistic")]
    NegativeExponent(i64),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid marked perfect matching: {0}")]
    InvalidMarked(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
