use num_complex::Complex64;

use super::{QuadratureError, QuadratureOptions, QuadratureResult};

const INITIAL_POINTS: usize = 16;

/// `∫₀^period f(t) dt` for a smooth periodic `f` by the trapezoid rule,
/// doubling the node count (and reusing old nodes) until two successive
/// refinements each change the estimate by less than the tolerance.
///
/// `max_panels` caps the number of nodes. Errors raised by `f` are passed
/// through unchanged.
pub fn integrate_periodic<E: From<QuadratureError>>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    period: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult<f64>, E> {
    options.validate()?;
    if !(period > 0.0 && period.is_finite()) {
        return Err(QuadratureError::InvalidOptions(format!("period must be positive and finite, got {period}")).into());
    }
    let mut eval = |t: f64| -> Result<f64, E> {
        let v = f(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::Evaluation { abscissa: t }.into())
        }
    };

    let mut n = INITIAL_POINTS;
    let mut sum = 0.0;
    for i in 0..n {
        sum += eval(period * i as f64 / n as f64)?;
    }
    let mut estimate = sum * period / n as f64;
    let mut agreements = 0;
    let mut last_change = f64::INFINITY;

    while 2 * n <= options.max_panels {
        // New nodes sit at the midpoints of the current grid.
        for i in 0..n {
            sum += eval(period * (2 * i + 1) as f64 / (2 * n) as f64)?;
        }
        n *= 2;
        let refined = sum * period / n as f64;
        last_change = (refined - estimate).abs();
        estimate = refined;
        if last_change <= options.tolerance_for(estimate.abs()) {
            agreements += 1;
            if agreements == 2 {
                return Ok(QuadratureResult {
                    value: estimate,
                    error_estimate: last_change,
                    panels_used: n,
                    truncation_radius: period,
                });
            }
        } else {
            agreements = 0;
        }
    }
    Err(QuadratureError::Convergence {
        best: Complex64::new(estimate, 0.0),
        error_estimate: last_change,
        panels: n,
    }
    .into())
}
