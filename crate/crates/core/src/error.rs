use thiserror::Error;

use crate::hypergraph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hypergraph: {}", join_violations(.0))]
    InvalidHypergraph(Vec<Violation>),

    #[error("vertex id {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("uniformity k = {k} out of domain (requires k >= {min})")]
    UniformityOutOfDomain { k: usize, min: usize },

    #[error("uniformity mismatch: hypergraph is {found}, scheme targets k = {expected}")]
    UniformityMismatch { expected: usize, found: String },

    #[error("random generator: {0}")]
    Generator(String),

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("weight scheme violates invariant: {0}")]
    InvalidScheme(String),

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
