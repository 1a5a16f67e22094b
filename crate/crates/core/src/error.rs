//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enumeration. Each variant carries enough context to
/// render a useful diagnostic; the CLI maps variants onto stable error
/// codes via [`Error::code`].
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entries must be finite (found NaN or Inf)")]
    NonFiniteEntry,

    #[error("eigenvalue iteration did not converge within {sweeps} QR sweeps")]
    NonConvergence { sweeps: usize },

    #[error("matrix is not Hermitian: ||M - M*|| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("eigenvalue {re:+.3e}{im:+.3e}i lies within the imaginary-axis band {band:.3e}")]
    AxisEigenvalue { re: f64, im: f64, band: f64 },

    #[error("Gamma is singular: smallest singular value {sigma_min:.3e} below {tolerance:.3e}")]
    SingularGamma { sigma_min: f64, tolerance: f64 },

    #[error("matrix is not positive definite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("i*omega is an eigenvalue of A at omega = {omega}")]
    ResonantFrequency { omega: f64 },

    #[error("spectrum symmetry pairing failed at eigenvalue {re:+.3e}{im:+.3e}i")]
    PairingFailure { re: f64, im: f64 },

    #[error("numerical rank is ambiguous: singular value {sigma:.3e} inside band [{lo:.3e}, {hi:.3e}]; rerun with a different tolerance")]
    RankAmbiguity { sigma: f64, lo: f64, hi: f64 },

    #[error("Jordan chain extraction failed: residual {residual:.3e} exceeds {tolerance:.3e}")]
    ChainExtractionFailure { residual: f64, tolerance: f64 },

    #[error("indefinite form degenerate at omega = {omega}: v*(iJ)v = {value:.3e} within tolerance of zero")]
    IndefiniteDegenerate { omega: f64, value: f64 },

    #[error("X1 block of the invariant subspace is numerically singular (cond = {cond:.3e})")]
    SingularX1 { cond: f64 },

    #[error("Riccati inequality is not solvable{}", witness.map(|w| format!(" (witness omega = {w})")).unwrap_or_default())]
    NotSolvable { witness: Option<f64> },

    #[error("search strategy '{strategy}' exhausted its budget without success")]
    SearchExhausted { strategy: &'static str },

    #[error("no chain basis available for the block at omega = {omega}")]
    MissingChainBasis { omega: f64 },

    #[error("trajectory matching ambiguous at t = {t}: {detail}")]
    MatchingAmbiguity { t: f64, detail: String },

    #[error("parse error: {0}")]
    ParseError(String),
}

impl Error {
    /// Stable machine-readable code for structured error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonFiniteEntry => "NonFiniteEntry",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::AxisEigenvalue { .. } => "AxisEigenvalue",
            Error::SingularGamma { .. } => "SingularGamma",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::ResonantFrequency { .. } => "ResonantFrequency",
            Error::PairingFailure { .. } => "PairingFailure",
            Error::RankAmbiguity { .. } => "RankAmbiguity",
            Error::ChainExtractionFailure { .. } => "ChainExtractionFailure",
            Error::IndefiniteDegenerate { .. } => "IndefiniteDegenerate",
            Error::SingularX1 { .. } => "SingularX1",
            Error::NotSolvable { .. } => "NotSolvable",
            Error::SearchExhausted { .. } => "SearchExhausted",
            Error::MissingChainBasis { .. } => "MissingChainBasis",
            Error::MatchingAmbiguity { .. } => "MatchingAmbiguity",
            Error::ParseError(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
