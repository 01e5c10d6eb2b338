use thiserror::Error;

use crate::codes::KnotName;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed Gauss word: {0}")]
    MalformedWord(String),

    #[error("malformed DT pairing: {0}")]
    MalformedPairing(String),

    #[error("label {0} does not occur in the code")]
    UnknownLabel(u32),

    #[error("code {0} has no planar realization")]
    NonRealizable(String),

    #[error("flype candidate ({e1}, {c}, {e2}) does not interleave with the code")]
    InvalidCandidate { e1: usize, e2: usize, c: u32 },

    #[error("flype orbit exceeded {limit} diagrams")]
    OrbitOverflow { limit: usize },

    #[error("no knot is registered under DT code {0}")]
    UnknownDiagram(String),

    #[error("DT code {dt} is claimed by both {first} and {second}")]
    ConflictingDiagram {
        dt: String,
        first: KnotName,
        second: KnotName,
    },

    #[error("u- value of {0} is needed before it was computed")]
    MissingDependency(KnotName),

    #[error("malformed knot name {0:?}")]
    MalformedName(String),

    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("knot {0} is listed twice")]
    DuplicateName(KnotName),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
