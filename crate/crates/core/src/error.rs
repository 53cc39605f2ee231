use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Variants fall in two groups: invalid input ([`Error::is_validation`]) and
/// internal inconsistencies that indicate a numerical bug or a pathological
/// input ([`Error::is_numerical`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid partial trace: keep set must be a nonempty proper subset")]
    InvalidKeepSet,

    #[error("density matrix has trace {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("eigenvalue {value:e} below the clamping threshold")]
    NegativeEigenvalue { value: f64 },

    #[error("parameter {name} = {value} out of range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("mixing matrix is not a column isometry (deviation {deviation:e})")]
    NotIsometric { deviation: f64 },

    #[error("rank mismatch: density matrix has rank {rank}, mixing matrix has {cols} columns")]
    RankMismatch { rank: usize, cols: usize },

    #[error("lambda3 = lambda4 = 0: the BC transformation is undefined")]
    DegenerateBc,

    #[error("no admissible root for the canonical-form rotation")]
    RootSelection,

    #[error("{quantity} = {value:e} lies outside its admissible range")]
    Inconsistent { quantity: &'static str, value: f64 },
}

impl Error {
    /// Input was malformed or outside an operation's domain.
    pub fn is_validation(&self) -> bool {
        !self.is_numerical()
    }

    /// The computation itself produced an inconsistent value.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Inconsistent { .. } | Error::RootSelection)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
