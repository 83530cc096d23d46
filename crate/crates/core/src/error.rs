use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    Parse(String),

    /// Bad command-line usage not caught by argument parsing.
    #[error("{0}")]
    Usage(String),

    #[error("({0}) is not in the lattice Z x Z x 1/2 Z x 1/6 Z")]
    Lattice(String),

    #[error("division by zero")]
    DivisionByZero,

    /// A precondition on the numerical input failed; the message names it.
    #[error("{0}")]
    Domain(String),

    #[error("wall is a vertical line or degenerate (delta_10 = 0)")]
    VerticalWall,

    #[error("empty wall (radius_sq = {0} <= 0)")]
    EmptyWall(String),

    #[error("degenerate lambda-wall (identically zero)")]
    DegenerateLambdaWall,

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
