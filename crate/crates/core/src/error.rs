use thiserror::Error;

use crate::scheme::{OvalPath, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("malformed JSON scheme: {0}")]
    Json(String),

    #[error("degree must be positive")]
    ZeroDegree,

    #[error("invalid scheme: {}", join_violations(.0))]
    InvalidScheme(Vec<Violation>),

    #[error("degree {0} is even; the inequalities are stated for odd degree only")]
    EvenDegree(u32),

    #[error("degree 1 gives k = 0; the inequalities need k > 0")]
    KZero,

    #[error("path {0} does not address an oval")]
    InvalidPath(OvalPath),

    #[error("ovals at {0} are not a swappable pair (need a single child of opposite sign)")]
    NotSwappable(OvalPath),

    #[error("construction parameter p = {p} out of range (need p >= {min})")]
    ParameterOutOfRange { p: u32, min: u32 },

    #[error("malformed construction state: {0}")]
    MalformedState(String),

    #[error("oval count {requested} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { requested: usize, ceiling: usize },

    #[error("a degree is required to lift forests to schemes")]
    DegreeRequired,

    #[error("search limit of {0} states exceeded")]
    LimitExceeded(usize),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
