use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector has zero denominator component")]
    DegenerateVector,
    #[error("triangle is degenerate (collinear vertices)")]
    DegenerateTriangle,
    #[error("point {0} lies outside the triangle")]
    OutsideTriangle(String),
    #[error("value {0} outside [0, 1]")]
    OutOfUnitInterval(String),
    #[error("step count must be at least 1")]
    ZeroStep,
    #[error("case I is only allowed as the first compressed step (found at step {0})")]
    LeadingCaseI(usize),
    #[error("malformed sequence: {0}")]
    MalformedSequence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix has no strictly dominant real eigenvalue")]
    NotDominant,
    #[error("dominant eigenspace is degenerate: {0}")]
    DegenerateEigenspace(String),
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("parameter L must be at least 1")]
    LBelowOne,
    #[error("render depth {depth} exceeds maximum {max}")]
    DepthTooLarge { depth: u32, max: u32 },
    #[error("no convergence within {0} raw steps")]
    DepthExhausted(u64),
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotDominant => 3,
            _ => 2,
        }
    }
}
