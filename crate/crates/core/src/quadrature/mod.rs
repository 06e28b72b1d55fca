//! Numerical integration engines.
//!
//! * [`integrate_oscillatory`]: `∫₀^∞ f(r) dr` for integrands carrying a
//!   Bessel factor `J_n(qr)`, panelled between zeros of `J₀(qr)` and
//!   truncated once the integrand envelope is negligible.
//! * [`integrate_disc_2d`]: complex integrals over a disc on a dyadically
//!   refined polar grid of tensor Gauss–Legendre cells.
//! * [`integrate_periodic`]: full-period integrals by the trapezoid rule
//!   with successive doubling.

mod disc;
mod gauss;
mod oscillatory;
mod periodic;

use num_complex::Complex64;
use thiserror::Error;

pub use disc::integrate_disc_2d;
pub use gauss::gauss_legendre;
pub use oscillatory::{integrate_interval, integrate_oscillatory, integrate_oscillatory_with_envelope};
pub use periodic::integrate_periodic;

/// How a semi-infinite domain is cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Integrate over `[0, R]` exactly.
    FixedRadius(f64),
    /// Stop at the first panel boundary past which the integrand envelope
    /// stays below `threshold` across a whole panel.
    Envelope { threshold: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound on the number of panels (1D) or cells (2D).
    pub max_panels: usize,
    pub truncation: Truncation,
    /// Base panel width for the non-oscillatory parts of a scan. `None`
    /// lets the caller pick a natural length scale (profiles use their
    /// decay scale); the engine falls back to 1.
    pub panel_width: Option<f64>,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_panels: 4096,
            truncation: Truncation::Envelope { threshold: 1e-14 },
            panel_width: None,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureOptions {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let bad = |msg: String| Err(QuadratureError::InvalidOptions(msg));
        if !(self.abs_tol > 0.0) {
            return bad(format!("abs_tol must be positive, got {}", self.abs_tol));
        }
        if !(self.rel_tol > 0.0) {
            return bad(format!("rel_tol must be positive, got {}", self.rel_tol));
        }
        if self.max_panels < 8 {
            return bad(format!("max_panels must be at least 8, got {}", self.max_panels));
        }
        match self.truncation {
            Truncation::FixedRadius(r) if !(r > 0.0 && r.is_finite()) => {
                return bad(format!("truncation radius must be positive and finite, got {r}"))
            }
            Truncation::Envelope { threshold } if !(threshold > 0.0) => {
                return bad(format!("envelope threshold must be positive, got {threshold}"))
            }
            _ => {}
        }
        if let Some(w) = self.panel_width {
            if !(w > 0.0 && w.is_finite()) {
                return bad(format!("panel_width must be positive and finite, got {w}"));
            }
        }
        Ok(())
    }

    pub(crate) fn tolerance_for(&self, value_magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value_magnitude)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub panels_used: usize,
    /// Outer radius of the integrated region (disc radius for 2D, the full
    /// period for periodic integrals).
    pub truncation_radius: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error(
        "quadrature did not converge within {panels} panels \
         (best estimate {best}, error estimate {error_estimate:e})"
    )]
    Convergence {
        best: Complex64,
        error_estimate: f64,
        panels: usize,
    },
    #[error("integrand returned a non-finite value at r = {abscissa}")]
    Evaluation { abscissa: f64 },
    #[error("integrand returned a non-finite value at (x, y) = ({x}, {y})")]
    Evaluation2d { x: f64, y: f64 },
    #[error("invalid quadrature options: {0}")]
    InvalidOptions(String),
}
