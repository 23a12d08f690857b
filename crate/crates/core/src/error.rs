//! Error type shared by all kernel modules.

use thiserror::Error;

/// Errors reported by kernel operations. Structural mismatches that can only
/// arise from caller bugs (adding values over different variable counts, say)
/// are reported through the fallible entry points; the operator-trait
/// shorthands panic instead and are documented as such.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("operad variety mismatch")]
    VarietyMismatch,

    #[error("evaluation table violates translation invariance: {0}")]
    InconsistentTable(String),

    #[error("evaluation table is not reconstructible: {0}")]
    NotReconstructible(String),

    #[error("internal degree bound exceeded: {0}")]
    DegreeBound(String),

    #[error("operation requires a single-variable session, got n = {0}")]
    MultiVariableSession(usize),

    #[error("symplectic structure needs an even variable count, got {0}")]
    OddDimension(usize),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
