use thiserror::Error;

/// Errors raised by the numerics, distributions and fitting layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (this includes NaN).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method exhausted its budget. `partial` is the best value reached.
    #[error("{method} did not converge after {evaluations} evaluations (partial result {partial})")]
    NoConvergence {
        method: &'static str,
        evaluations: usize,
        partial: f64,
    },

    /// The operation is not defined for this family.
    #[error("{operation} is not available for the {family} family")]
    Unsupported {
        operation: &'static str,
        family: &'static str,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejects NaN and values failing `ok`, naming the argument in the message.
pub(crate) fn check<T: crate::Scalar>(name: &str, v: T, ok: bool, expect: &str) -> Result<()> {
    if v.is_nan() || !ok {
        Err(Error::Domain(format!("{name} = {v} (expected {expect})")))
    } else {
        Ok(())
    }
}
