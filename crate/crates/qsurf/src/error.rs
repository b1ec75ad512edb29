//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the symbolic or operator layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Two elements built over different coefficient backends (or with
    /// different numeric parameters) were combined.
    #[error("coefficient backend mismatch: {0}")]
    BackendMismatch(String),

    /// An element of one algebra was fed to a presentation, homomorphism or
    /// representation of another.
    #[error("alphabet mismatch: expected {expected}, got {got}")]
    AlphabetMismatch { expected: String, got: String },

    /// A generator name that does not belong to the selected algebra.
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    /// The rewrite engine exceeded its step budget; with the shipped rule
    /// sets this indicates a malformed custom rule, not a deep input.
    #[error("rewrite budget exceeded after {steps} steps (budget {budget})")]
    RewriteBudget { steps: u64, budget: u64 },

    /// Invalid construction parameters (q outside (0,1), negative c, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A matrix expected to be hermitian was not, within tolerance.
    #[error("matrix is not hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// A matrix expected to be unitary was not, within tolerance.
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    /// A scalar function was evaluated outside its domain.
    #[error("{name} evaluated outside its domain at t = {at}")]
    DomainViolation { name: &'static str, at: f64 },

    /// An algebra map that must be an involution failed the check.
    #[error("action is not an involution: {0}")]
    NotInvolutive(String),

    /// Mismatched matrix dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A defect or trace that must be an integer was not close to one.
    #[error("trace {trace} is not within {tol:.1e} of an integer")]
    NonIntegerTrace { trace: f64, tol: f64 },

    /// A floating-point witness failed an internal consistency check.
    #[error("numerical check failed: {0}")]
    Numerics(String),

    /// Expression parser failure, with a byte offset into the input.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A verification suite id that is not in the catalog.
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    /// Suite configuration violates a documented precondition.
    #[error("invalid suite configuration: {0}")]
    InvalidConfig(String),

    /// Report serialization or file output failure.
    #[error("report output failed: {0}")]
    Io(#[from] std::io::Error),
}
