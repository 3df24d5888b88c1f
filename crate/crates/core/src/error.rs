use crate::spectrum::ExistenceReport;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    /// An energy or coordinate outside the region where a formula is real.
    #[error("domain error: {what} (value {value:e})")]
    Domain { what: &'static str, value: f64 },

    #[error("no bound state: {}", .0.reason)]
    NoBoundState(ExistenceReport),

    #[error("only the positive spin-orbit branch kappa = (2l+D-1)/2 is supported")]
    UnsupportedBranch,

    #[error("numerical failure in {what} (value {value:e}); {hint}")]
    Numerical {
        what: &'static str,
        value: f64,
        hint: &'static str,
    },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    QuadratureNotConverged { estimate: f64, error: f64 },
}
