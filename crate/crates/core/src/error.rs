use thiserror::Error;

/// Errors raised by the regularization pipeline and its numeric oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("loop integral with denominator power {power} is still divergent")]
    StillDivergent { power: u32 },

    #[error("M² = 0 is singular for this term")]
    SingularMassSq,

    #[error("arbitrary constant C{0} has not been fixed")]
    UnfixedConstant(usize),

    #[error("no arbitrary constant C{0} in the ledger")]
    UnknownConstant(usize),

    #[error("unsupported antiderivative: {0}")]
    Unsupported(String),

    #[error("quadrature missed its tolerance: estimated error {error:e} on value {value:e} after {intervals} intervals")]
    QuadratureTolerance { value: f64, error: f64, intervals: usize },

    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("resummed coupling is past its pole at μ = {mu} GeV")]
    Pole { mu: f64 },
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::QuadratureTolerance { .. } | Error::NoBracket { .. } | Error::Pole { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive and finite, got {value}")))
    }
}
