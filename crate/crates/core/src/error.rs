use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("unknown basis symbol `{0}`")]
    UnknownSymbol(String),

    #[error("duplicate basis symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("arity {arity} exceeds the configured bound {bound}")]
    ArityBound { arity: usize, bound: usize },

    #[error("position {position} out of range for arity {arity}")]
    Position { position: usize, arity: usize },

    #[error("truncation overflow: weight {weight} exceeds W = {bound}")]
    TruncationOverflow { weight: usize, bound: usize },

    #[error("axiom violated: {0}")]
    Axiom(String),

    #[error("not a Maurer-Cartan element: {0}")]
    NotMaurerCartan(String),

    #[error("divergence guard: {0}")]
    Divergence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseAt {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference `{0}`")]
    Reference(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
