use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every evaluator and driver in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("value out of floating-point range: {0}")]
    Range(String),

    #[error("tracked function vanishes on the path at {point}")]
    OnPathZero { point: String },

    #[error("argument resolution failed near {point} after {halvings} halvings")]
    Resolution { point: String, halvings: u32 },

    #[error("T = {t} lies within the guard band of the zero ordinate gamma = {gamma}")]
    OrdinateCollision { t: f64, gamma: f64 },

    #[error("invalid bracket [{lo}, {hi}]: Z has the same sign at both ends")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Io(_) => 1,
            Error::Inconsistency(_) => 2,
            Error::Domain(_)
            | Error::Pole(_)
            | Error::Config(_)
            | Error::OnPathZero { .. }
            | Error::OrdinateCollision { .. }
            | Error::InvalidBracket { .. }
            | Error::Validation(_) => 3,
            Error::Accuracy(_) | Error::Range(_) | Error::Resolution { .. } => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
