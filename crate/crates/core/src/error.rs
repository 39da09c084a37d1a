use thiserror::Error;

/// Errors raised by algebra construction, the GNS pipeline and the scenario runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("span closure did not stabilize after {0} enlargement rounds")]
    ClosureDidNotStabilize(usize),

    #[error("operator span does not contain the identity")]
    NotUnital,

    #[error("operator span is not closed (residual {0:.3e})")]
    NotClosed(f64),

    #[error("{what} is not an integer (got {value})")]
    NotIntegral { what: &'static str, value: f64 },

    #[error("random draw degenerate after {0} attempts")]
    RetryExhausted(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("numerical breakdown: {0}")]
    Numerical(String),

    #[error("singular linear system (smallest pivot {0:.3e})")]
    SingularSystem(f64),

    #[error("GNS and Wedderburn spectra disagree (max deviation {0:.3e})")]
    OracleDisagreement(f64),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NonUnitary(f64),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by bad input rather than by a numerical check.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::NotSquare(..)
                | Error::NonFinite
                | Error::NotUnital
                | Error::InvalidState(_)
                | Error::NonUnitary(_)
                | Error::OutOfRange(_)
                | Error::UnknownPreset(_)
                | Error::UnknownParameter(_)
                | Error::Scenario(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
