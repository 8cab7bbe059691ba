use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the solvers. Every variant names the quantity that went
/// out of contract so CLI consumers can report a stable error class.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Caller violated an argument contract (wrong parity/geometry pairing,
    /// non-positive tolerance, method/potential combination with no meaning).
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },

    /// Argument lies outside the mathematical domain of the operation
    /// (non-positive energy, action interval crossing the turning point, …).
    #[error("domain error: {reason}")]
    Domain { reason: String },

    /// Airy argument outside the supported interval. Beyond `max` the Bi
    /// branch overflows f64; below `min` phase reduction degrades.
    #[error("airy argument {x} outside supported range [{min}, {max}]")]
    AiryRange { x: f64, min: f64, max: f64 },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failed on [{lo}, {hi}]: estimate {estimate:e} > tolerance {tolerance:e}")]
    Quadrature {
        lo: f64,
        hi: f64,
        estimate: f64,
        tolerance: f64,
    },

    /// Root scan walked past the energy ceiling without collecting enough
    /// sign changes for the requested state ordinal.
    #[error("no root with ordinal {index} found below energy ceiling {ceiling}")]
    SearchExhausted { index: usize, ceiling: f64 },

    /// Refined root sits on the regime seam E = V(b), where the two residual
    /// families disagree; the estimate is reported instead of a blind pick.
    #[error("root estimate {estimate} collides with regime seam {seam}")]
    DegenerateSeam { estimate: f64, seam: f64 },

    /// Root was located but its residual cannot be pushed under the caller's
    /// tolerance in double precision.
    #[error("residual {residual:e} at E={energy} above requested tolerance {tolerance:e}")]
    ResidualAboveTolerance {
        energy: f64,
        residual: f64,
        tolerance: f64,
    },

    /// Reference eigensolver failed to converge.
    #[error("reference solver did not converge after {iterations} iterations")]
    OracleNonConvergence { iterations: usize },
}

impl Error {
    /// Stable machine-readable class name, used by the CLI for exit
    /// diagnostics and per-cell error markers.
    pub fn class(&self) -> &'static str {
        match self {
            Error::InvalidInput { .. } => "invalid-input",
            Error::Domain { .. } => "domain",
            Error::AiryRange { .. } => "airy-range",
            Error::Quadrature { .. } => "quadrature",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::DegenerateSeam { .. } => "degenerate-seam",
            Error::ResidualAboveTolerance { .. } => "residual-above-tolerance",
            Error::OracleNonConvergence { .. } => "oracle-non-convergence",
        }
    }
}

pub(crate) fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidInput {
        reason: reason.into(),
    }
}

pub(crate) fn domain(reason: impl Into<String>) -> Error {
    Error::Domain {
        reason: reason.into(),
    }
}
