use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::gauss::{gk15, PanelEstimate};
use super::{QuadratureError, QuadratureOptions, QuadratureResult, Truncation};
use crate::specfun::BesselZeros;

/// Envelope must stay quiet this far out (in panel widths) before the scan
/// may stop; keeps integrands that start near zero from truncating early.
const MIN_SCAN_WIDTHS: f64 = 4.0;
const ENVELOPE_SAMPLES: usize = 9;

/// `∫₀^∞ integrand(r) dr` for integrands oscillating like `J_n(qr)`.
///
/// For `wavenumber > 0` panel boundaries sit at the zeros of `J₀(qr)`; gaps
/// wider than the base panel width are split evenly. With `wavenumber == 0`
/// the panels are uniform. The envelope used for truncation is `|integrand|`
/// sampled across each panel; supply a sharper bound through
/// [`integrate_oscillatory_with_envelope`] when one is known.
///
/// The integrand is never evaluated at `r = 0`.
pub fn integrate_oscillatory(
    integrand: impl Fn(f64) -> f64,
    wavenumber: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult<f64>, QuadratureError> {
    integrate_oscillatory_with_envelope(&integrand, |r| integrand(r).abs(), wavenumber, options)
}

/// As [`integrate_oscillatory`], with an explicit non-oscillatory envelope:
/// typically the integrand with every Bessel factor replaced by its bound 1.
pub fn integrate_oscillatory_with_envelope(
    integrand: impl Fn(f64) -> f64,
    envelope: impl Fn(f64) -> f64,
    wavenumber: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult<f64>, QuadratureError> {
    options.validate()?;
    if !(wavenumber >= 0.0 && wavenumber.is_finite()) {
        return Err(QuadratureError::InvalidOptions(format!(
            "oscillation wavenumber must be finite and non-negative, got {wavenumber}"
        )));
    }
    let width = options.panel_width.unwrap_or(1.0);
    let mut cursor = PanelCursor::new(wavenumber, width);
    let mut panels = Vec::new();
    let mut a = 0.0;

    loop {
        let mut b = cursor.next_boundary();
        if let Truncation::FixedRadius(radius) = options.truncation {
            b = b.min(radius);
        }
        let est = gk15(&integrand, a, b).map_err(|abscissa| QuadratureError::Evaluation { abscissa })?;
        panels.push(est);

        let done = match options.truncation {
            Truncation::FixedRadius(radius) => b >= radius,
            Truncation::Envelope { threshold } => {
                b >= MIN_SCAN_WIDTHS * width && envelope_quiet(&envelope, a, b, threshold)
            }
        };
        if done {
            break;
        }
        if panels.len() >= options.max_panels {
            let (value, error) = totals(&panels);
            return Err(QuadratureError::Convergence {
                best: Complex64::new(value, 0.0),
                error_estimate: error,
                panels: panels.len(),
            });
        }
        a = b;
    }

    let radius = panels.last().map_or(0.0, |p| p.b);
    refine(&integrand, panels, options, radius)
}

/// Adaptive G7K15 integration over a finite interval `[a, b]`.
pub fn integrate_interval(
    integrand: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult<f64>, QuadratureError> {
    options.validate()?;
    let est = gk15(&integrand, a, b).map_err(|abscissa| QuadratureError::Evaluation { abscissa })?;
    refine(&integrand, vec![est], options, b)
}

fn envelope_quiet(envelope: &impl Fn(f64) -> f64, a: f64, b: f64, threshold: f64) -> bool {
    (0..ENVELOPE_SAMPLES).all(|i| {
        let r = a + (b - a) * (i + 1) as f64 / ENVELOPE_SAMPLES as f64;
        envelope(r).abs() < threshold
    })
}

fn totals(panels: &[PanelEstimate]) -> (f64, f64) {
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

struct ByError(PanelEstimate);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}

impl Eq for ByError {}

impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Global adaptive refinement: keep bisecting the panel with the largest
/// error estimate until the summed estimate meets the tolerance.
fn refine(
    integrand: &impl Fn(f64) -> f64,
    panels: Vec<PanelEstimate>,
    options: &QuadratureOptions,
    radius: f64,
) -> Result<QuadratureResult<f64>, QuadratureError> {
    let (mut value, mut error) = totals(&panels);
    let mut heap: BinaryHeap<ByError> = panels.into_iter().map(ByError).collect();

    while error > options.tolerance_for(value.abs()) {
        if heap.len() >= options.max_panels {
            return Err(QuadratureError::Convergence {
                best: Complex64::new(value, 0.0),
                error_estimate: error,
                panels: heap.len(),
            });
        }
        let Some(ByError(worst)) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in floating point.
            heap.push(ByError(PanelEstimate { error: 0.0, ..worst }));
            error -= worst.error;
            continue;
        }
        let left = gk15(integrand, worst.a, mid).map_err(|abscissa| QuadratureError::Evaluation { abscissa })?;
        let right = gk15(integrand, mid, worst.b).map_err(|abscissa| QuadratureError::Evaluation { abscissa })?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
    }

    // Re-sum to shed the drift of the running updates.
    let panels: Vec<PanelEstimate> = heap.into_iter().map(|p| p.0).collect();
    let (value, error) = totals(&panels);
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        panels_used: panels.len(),
        truncation_radius: radius,
    })
}

/// Walks outward through panel boundaries: zeros of `J₀(qr)` when `q > 0`,
/// each gap split so no panel exceeds the base width.
struct PanelCursor {
    zeros: Option<(BesselZeros, f64)>,
    width: f64,
    position: f64,
    pending: Vec<f64>,
}

impl PanelCursor {
    fn new(wavenumber: f64, width: f64) -> Self {
        let zeros = (wavenumber > 0.0).then(|| (BesselZeros::new(0), wavenumber));
        PanelCursor {
            zeros,
            width,
            position: 0.0,
            pending: Vec::new(),
        }
    }

    fn next_boundary(&mut self) -> f64 {
        if let Some(b) = self.pending.pop() {
            self.position = b;
            return b;
        }
        let target = match &mut self.zeros {
            Some((zeros, q)) => {
                let z = zeros.next().expect("Bessel zeros are unbounded") / *q;
                // Guard against zeros closer than a panel to the cursor.
                if z <= self.position {
                    self.position + self.width
                } else {
                    z
                }
            }
            None => self.position + self.width,
        };
        let gap = target - self.position;
        let pieces = (gap / self.width).ceil().max(1.0) as usize;
        let start = self.position;
        // Fill in reverse so `pop` yields increasing boundaries.
        self.pending = (1..=pieces)
            .rev()
            .map(|i| {
                if i == pieces {
                    target
                } else {
                    start + gap * i as f64 / pieces as f64
                }
            })
            .collect();
        let b = self.pending.pop().expect("at least one piece");
        self.position = b;
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::jn;

    #[test]
    fn exponential() {
        let res = integrate_oscillatory(|r: f64| (-r).exp(), 0.0, &QuadratureOptions::default()).unwrap();
        assert!((res.value - 1.0).abs() < 1e-10);
        assert!(res.error_estimate <= 1e-10_f64.max(1e-8 * res.value));
    }

    #[test]
    fn gaussian_hankel_transform() {
        let b = 2.0;
        let f = |r: f64| r * (-r * r / 2.0).exp() * jn(0, b * r);
        let res = integrate_oscillatory(f, b, &QuadratureOptions::default()).unwrap();
        assert!((res.value - 0.1353352832366127).abs() < 1e-9, "{}", res.value);
    }

    #[test]
    fn zero_integrand() {
        let res = integrate_oscillatory(|_| 0.0, 3.0, &QuadratureOptions::default()).unwrap();
        assert_eq!(res.value, 0.0);
    }

    #[test]
    fn fixed_radius() {
        let opts = QuadratureOptions {
            truncation: Truncation::FixedRadius(2.5),
            ..Default::default()
        };
        let res = integrate_oscillatory(|r: f64| r, 1.3, &opts).unwrap();
        assert!((res.value - 3.125).abs() < 1e-12);
        assert_eq!(res.truncation_radius, 2.5);
    }

    #[test]
    fn envelope_truncation_is_sound() {
        let f = |r: f64| (-r * r).exp() * jn(1, 3.0 * r);
        let env = |r: f64| (-r * r).exp();
        let opts = QuadratureOptions::default();
        let res = integrate_oscillatory_with_envelope(f, env, 3.0, &opts).unwrap();
        assert!(env(res.truncation_radius) < 1e-14);
    }

    #[test]
    fn nan_is_reported_with_abscissa() {
        let f = |r: f64| if r > 2.0 { f64::NAN } else { 1.0 };
        match integrate_oscillatory(f, 0.0, &QuadratureOptions::default()) {
            Err(QuadratureError::Evaluation { abscissa }) => assert!(abscissa > 2.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_convergence_carries_best_estimate() {
        let opts = QuadratureOptions {
            max_panels: 8,
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            truncation: Truncation::FixedRadius(1.0),
            ..Default::default()
        };
        match integrate_oscillatory(|r: f64| (50.0 * r).sin().abs(), 0.0, &opts) {
            Err(QuadratureError::Convergence { best, panels, .. }) => {
                assert!(panels >= 8);
                assert!((best.re - 0.636).abs() < 0.05);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_options() {
        let opts = QuadratureOptions {
            abs_tol: 0.0,
            ..Default::default()
        };
        assert!(integrate_oscillatory(|r: f64| r, 0.0, &opts).is_err());
        assert!(integrate_oscillatory(|r: f64| r, -1.0, &QuadratureOptions::default()).is_err());
    }

    #[test]
    fn tighter_tolerance_never_hurts_hankel_family() {
        let mut last = f64::INFINITY;
        for tol in [1e-6, 5e-7, 2.5e-7, 1.25e-7, 6.25e-8] {
            let opts = QuadratureOptions::with_tolerances(tol, 1e-14);
            let mut worst = 0.0_f64;
            for &b in &[0.5, 1.0, 2.0, 4.0] {
                let f = |r: f64| r * (-r * r / 2.0).exp() * jn(0, b * r);
                let v = integrate_oscillatory(f, b, &opts).unwrap().value;
                worst = worst.max((v - (-b * b / 2.0_f64).exp()).abs());
            }
            assert!(worst <= last.max(1e-15), "tol {tol}: {worst} > {last}");
            last = worst;
        }
    }
}
