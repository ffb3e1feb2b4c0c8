use thiserror::Error;

/// Errors raised by the optimizer library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown benchmark `{id}`; valid ids: {}", valid.join(", "))]
    NotFound { id: String, valid: Vec<String> },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("diversity undefined for a population of {0}")]
    UndefinedDiversity(usize),

    #[error("spread undefined: obtained front has {0} point(s)")]
    UndefinedSpread(usize),

    #[error("degenerate samples: both constant with different means ({0} vs {1})")]
    DegenerateSample(f64, f64),

    #[error("invalid state: {0}")]
    State(String),

    #[error("objective returned {value} at generation {generation}, individual {individual}")]
    Objective {
        generation: usize,
        individual: usize,
        value: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Shape { expected, got })
    }
}
