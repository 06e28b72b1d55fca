use std::f64::consts::PI;

use num_complex::Complex64;

use super::gauss::gauss_legendre;
use super::{QuadratureError, QuadratureOptions, QuadratureResult};

/// Nodes per direction inside each polar cell.
const CELL_ORDER: usize = 12;
const INITIAL_DIVISIONS: usize = 4;

/// `∫∫ integrand(x, y) dx dy` over the disc of the given radius centred on
/// the origin.
///
/// The disc is cut into `m × m` polar cells (equal steps in `r` and `θ`),
/// each integrated with a tensor Gauss–Legendre rule. `m` doubles from 4
/// until two successive grids agree to tolerance; the difference between
/// the last two grids is reported as the error estimate. Gauss nodes never
/// touch `r = 0`.
pub fn integrate_disc_2d(
    integrand: impl Fn(f64, f64) -> Complex64,
    radius: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult<Complex64>, QuadratureError> {
    options.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(QuadratureError::InvalidOptions(format!(
            "disc radius must be positive and finite, got {radius}"
        )));
    }
    let (nodes, weights) = gauss_legendre(CELL_ORDER);
    let mut divisions = INITIAL_DIVISIONS;
    let mut previous = grid_sum(&integrand, radius, divisions, &nodes, &weights)?;

    loop {
        let next_divisions = divisions * 2;
        if next_divisions * next_divisions > options.max_panels {
            return Err(QuadratureError::Convergence {
                best: previous,
                error_estimate: f64::NAN,
                panels: divisions * divisions,
            });
        }
        let current = grid_sum(&integrand, radius, next_divisions, &nodes, &weights)?;
        let error = (current - previous).norm();
        divisions = next_divisions;
        if error <= options.tolerance_for(current.norm()) {
            return Ok(QuadratureResult {
                value: current,
                error_estimate: error,
                panels_used: divisions * divisions,
                truncation_radius: radius,
            });
        }
        if divisions * divisions * 4 > options.max_panels {
            return Err(QuadratureError::Convergence {
                best: current,
                error_estimate: error,
                panels: divisions * divisions,
            });
        }
        previous = current;
    }
}

fn grid_sum(
    integrand: &impl Fn(f64, f64) -> Complex64,
    radius: f64,
    divisions: usize,
    nodes: &[f64],
    weights: &[f64],
) -> Result<Complex64, QuadratureError> {
    let dr = radius / divisions as f64;
    let dt = 2.0 * PI / divisions as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for ir in 0..divisions {
        let r0 = ir as f64 * dr;
        let mut ring = Complex64::new(0.0, 0.0);
        for (xr, wr) in nodes.iter().zip(weights) {
            let r = r0 + 0.5 * dr * (xr + 1.0);
            let mut circle = Complex64::new(0.0, 0.0);
            for it in 0..divisions {
                let t0 = it as f64 * dt;
                for (xt, wt) in nodes.iter().zip(weights) {
                    let t = t0 + 0.5 * dt * (xt + 1.0);
                    let (x, y) = (r * t.cos(), r * t.sin());
                    let v = integrand(x, y);
                    if !(v.re.is_finite() && v.im.is_finite()) {
                        return Err(QuadratureError::Evaluation2d { x, y });
                    }
                    circle += v * *wt;
                }
            }
            ring += circle * (wr * r);
        }
        total += ring;
    }
    Ok(total * (0.25 * dr * dt))
}
