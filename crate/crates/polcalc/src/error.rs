use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input matrix violated hermiticity beyond tolerance.
    #[error("matrix is not Hermitian: max |m - m^H| = {residual:e} exceeds tolerance")]
    NonHermitian { residual: f64 },

    /// An ensemble was empty or its weights did not sum to a positive value.
    #[error("ensemble must contain at least one member with positive total weight")]
    EmptyEnsemble,

    /// A member weight was negative.
    #[error("ensemble weight {weight} is negative")]
    NegativeWeight { weight: f64 },

    /// An operation that needs a nonzero state received the zero vector.
    #[error("state vector is zero")]
    ZeroState,

    /// The associated Hermitian matrix has a negative eigenvalue, so the map
    /// admits no convex Jones-system realization.
    #[error("matrix is not physical: min eigenvalue of associated Hermitian matrix is {min_eigenvalue}")]
    NotPositive { min_eigenvalue: f64 },

    /// A reconstruction that must be real carried a non-negligible imaginary part.
    #[error("internal consistency failure: imaginary residue {residual:e} in a real reconstruction")]
    ImaginaryResidue { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
