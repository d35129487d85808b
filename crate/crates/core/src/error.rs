use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CpintError {
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("primitive is discontinuous at x = {at} (jump {jump:e})")]
    Discontinuous { at: f64, jump: f64 },
    #[error("primitive must vanish at -inf, left tail is {0}")]
    NonzeroLeftTail(f64),
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("piece degree {degree} exceeds the degree cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("smoothness precondition violated: {0}")]
    Smoothness(String),
    #[error("oracle did not converge after {levels} refinements (last change {change:e})")]
    NonConvergence { levels: usize, change: f64 },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("kernel outside the supported family: {0}")]
    UnsupportedKernel(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, CpintError>;
