use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("angle {0} is not an exact multiple of π/4")]
    NotExactAngle(String),
    #[error("linear angle must be instantiated before evaluation")]
    LinearAngle,
    #[error("unbound angle parameter `{0}`")]
    UnboundParameter(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("calculus mismatch: {0}")]
    CalculusMismatch(String),
    #[error("diagram is not well formed: {0}")]
    InvalidDiagram(String),
    #[error("contraction needs {needed} open wires, cap is {cap}")]
    DimensionOverflow { needed: usize, cap: usize },
    #[error("angle {0} is outside the {{0, π}} fragment")]
    OutOfFragment(String),
    #[error("matrix is not representable: {0}")]
    NotRepresentable(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("embedding is stale: host diagram changed since matching")]
    StaleEmbedding,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
