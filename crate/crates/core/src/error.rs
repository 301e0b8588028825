use thiserror::Error;

/// Errors raised by the library.  The CLI maps `Config` and `Hypothesis`
/// to exit code 2 and `CheckFailed` to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("group error: {0}")]
    Group(String),
    #[error("group order exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("character error: {0}")]
    Character(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("hecke error: {0}")]
    Hecke(String),
    #[error("analytic error: {0}")]
    Analytic(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
