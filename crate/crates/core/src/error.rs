use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `(t_end - t_start) / dt` is not an integer.
    #[error("non-integral step count: ({t_end} - {t_start}) / {dt} = {steps}")]
    NonIntegralSteps {
        t_start: f64,
        t_end: f64,
        dt: f64,
        steps: f64,
    },

    #[error("polynomial degree overflow: {0}")]
    DegreeOverflow(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
