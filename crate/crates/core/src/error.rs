use thiserror::Error;

/// Errors produced by the numerical engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CasimirError {
    #[error("no convergence: best estimate {estimate:e} with error bound {error:e} ({context})")]
    NonConvergence {
        estimate: f64,
        error: f64,
        context: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("step underflow: step {step:e} fell below the floor {floor:e} without meeting tolerance")]
    StepUnderflow { step: f64, floor: f64 },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("wrong case: {0}")]
    Case(String),

    #[error("unsupported provider: {0}")]
    UnsupportedProvider(String),

    #[error("series out of range: {0}")]
    SeriesOutOfRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl CasimirError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CasimirError::Domain(msg.into())
    }

    /// Attaches node diagnostics to a non-convergence error.
    pub fn with_context(self, ctx: impl AsRef<str>) -> Self {
        match self {
            CasimirError::NonConvergence {
                estimate,
                error,
                context,
            } => CasimirError::NonConvergence {
                estimate,
                error,
                context: if context.is_empty() {
                    ctx.as_ref().to_string()
                } else {
                    format!("{}; {}", ctx.as_ref(), context)
                },
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, CasimirError>;
