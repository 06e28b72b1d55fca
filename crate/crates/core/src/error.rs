use thiserror::Error;

use crate::quadrature::QuadratureError;
use crate::specfun::SpecfunError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),

    /// Incoming and outgoing wavevectors do not describe elastic scattering.
    #[error("kinematics error: |k_in| = {k_in} and |k_out| = {k_out} differ (elastic scattering required)")]
    Kinematics { k_in: f64, k_out: f64 },

    /// The unperturbed first-order amplitude vanishes, so the relative
    /// correction factors are undefined.
    #[error("singular configuration at k = {k}, theta = {theta}: unperturbed amplitude bracket vanishes")]
    SingularConfiguration { k: f64, theta: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
