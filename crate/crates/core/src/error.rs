use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} does not belong to the model")]
    InvalidVertex(String),
    #[error("arc endpoints coincide at {0}")]
    DegenerateArc(String),
    #[error("{0} is not a diagonal")]
    NotADiagonal(String),
    #[error("{0} has a limit point as an endpoint")]
    LimitEndpoint(String),
    #[error("{0} is not in the triangulation")]
    NotInTriangulation(String),
    #[error("{0} belongs to a tail family")]
    TailDiagonal(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("step cap of {cap} exceeded in {context}")]
    StepCap { cap: usize, context: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at {pointer}: {message}")]
    Parse { pointer: String, message: String },
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidTriangulation(_) | Error::Parse { .. } => 1,
            Error::StepCap { .. } => 3,
            _ => 2,
        }
    }
}
