use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants are grouped by the exit-code class the CLI maps them to:
/// domain/usage problems, numerical failures, and verification failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("log-gamma pole at nonpositive integer {0}")]
    PoleOfGamma(String),

    #[error("vanishing factor in evaluation: {0}")]
    PoleAtEvaluation(String),

    #[error("hyperbolic gamma pole at u = {u} (n = {n}, m = {m})")]
    PoleOfGammaH { u: String, n: u32, m: u32 },

    #[error("q-product converges too slowly: {0}")]
    SlowConvergence(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance: {0}")]
    QuadratureFailure(String),

    #[error("direction {0} lies outside both asymptotic cones")]
    Cone(String),

    #[error("invalid scan: {0}")]
    InvalidScan(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("residue sums disagree: plus-family {plus}, minus-family {minus}")]
    ResidueMismatch { plus: String, minus: String },

    #[error("bilateral sum did not close within window {0}")]
    WindowNotClosed(String),

    #[error("transformed parameters leave the contour domain: {0}")]
    TransformOutOfDomain(String),

    #[error("non-finite value produced: {0}")]
    NonFinite(String),
}

impl Error {
    /// Variant name, stable for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PoleOfGamma(_) => "PoleOfGamma",
            Error::PoleAtEvaluation(_) => "PoleAtEvaluation",
            Error::PoleOfGammaH { .. } => "PoleOfGammaH",
            Error::SlowConvergence(_) => "SlowConvergence",
            Error::Domain(_) => "DomainError",
            Error::QuadratureFailure(_) => "QuadratureFailure",
            Error::Cone(_) => "ConeError",
            Error::InvalidScan(_) => "InvalidScan",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::DegenerateParameters(_) => "DegenerateParameters",
            Error::InvalidTerm(_) => "InvalidTerm",
            Error::ResidueMismatch { .. } => "ResidueMismatch",
            Error::WindowNotClosed(_) => "WindowNotClosed",
            Error::TransformOutOfDomain(_) => "TransformOutOfDomain",
            Error::NonFinite(_) => "NonFinite",
        }
    }

    /// True for failures caused by the numerical method rather than the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure(_) | Error::SlowConvergence(_) | Error::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
