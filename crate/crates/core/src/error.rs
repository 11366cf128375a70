use thiserror::Error;

/// Crate-wide error type. Indices in messages are 1-based, matching the
/// on-disk formats and the CLI.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("multiplication table is not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("declared identity {declared} does not act as an identity")]
    BadIdentity { declared: usize },

    #[error("budget exhausted: {what} exceeded limit {limit}")]
    Budget { what: &'static str, limit: usize },

    #[error("map is not a homomorphism: images of {x}*{y} disagree")]
    NotAMorphism { x: usize, y: usize },

    #[error("semigroup is not inverse: {why}")]
    NotInverse { why: String },

    #[error("semigroup has no unique 0-minimal regular ideal: {why}")]
    NotCoordinatizable { why: String },

    #[error("operands live in different ambient structures: {why}")]
    AmbientMismatch { why: String },

    #[error("relation is not a congruence: states {q} and {q2} disagree under element {s}")]
    NotACongruence { q: usize, q2: usize, s: usize },

    #[error("generators do not generate the semigroup: element {missing} unreachable")]
    DoesNotGenerate { missing: usize },

    #[error("unknown builtin '{name}'")]
    UnknownBuiltin { name: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for budget exhaustion, which callers may treat as a soft
    /// failure (partial results, exit code 3).
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
