use thiserror::Error;

/// Failures raised by the geometric operations.
///
/// Axiom violations found by the audits are not errors; they are reported
/// in an [`AxiomReport`](crate::audit::AxiomReport).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operands come from different backends or factors (dimension mismatch, etc).
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is undefined for coincident inputs.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn structural<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structural(msg.into()))
}
