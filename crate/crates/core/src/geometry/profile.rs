use std::sync::Arc;

use crate::error::{Error, Result};

/// A radially symmetric height profile `z = f(r)`.
///
/// Implementors supply `f`, `ḟ` and `f̈` analytically where possible. The
/// surface must be smooth at the apex (`ḟ(0) = 0`, `ḟ(r)/r` bounded) and
/// asymptotically flat.
pub trait RadialProfile: Send + Sync {
    fn height(&self, r: f64) -> f64;
    fn slope(&self, r: f64) -> f64;
    fn second_derivative(&self, r: f64) -> f64;

    /// Radius beyond which the profile is negligible; sets panel widths and
    /// sampling grids.
    fn decay_scale(&self) -> f64;

    /// `lim_{r→0} ḟ(r)/r`. The default estimate samples the slope at
    /// `1e-8 · decay_scale`.
    fn slope_over_radius_at_origin(&self) -> f64 {
        let h = 1e-8 * self.decay_scale();
        self.slope(h) / h
    }
}

impl<P: RadialProfile + ?Sized> RadialProfile for &P {
    fn height(&self, r: f64) -> f64 {
        (**self).height(r)
    }
    fn slope(&self, r: f64) -> f64 {
        (**self).slope(r)
    }
    fn second_derivative(&self, r: f64) -> f64 {
        (**self).second_derivative(r)
    }
    fn decay_scale(&self) -> f64 {
        (**self).decay_scale()
    }
    fn slope_over_radius_at_origin(&self) -> f64 {
        (**self).slope_over_radius_at_origin()
    }
}

impl<P: RadialProfile + ?Sized> RadialProfile for Arc<P> {
    fn height(&self, r: f64) -> f64 {
        (**self).height(r)
    }
    fn slope(&self, r: f64) -> f64 {
        (**self).slope(r)
    }
    fn second_derivative(&self, r: f64) -> f64 {
        (**self).second_derivative(r)
    }
    fn decay_scale(&self) -> f64 {
        (**self).decay_scale()
    }
    fn slope_over_radius_at_origin(&self) -> f64 {
        (**self).slope_over_radius_at_origin()
    }
}

/// The plane `f ≡ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatProfile {
    pub scale: f64,
}

impl Default for FlatProfile {
    fn default() -> Self {
        FlatProfile { scale: 1.0 }
    }
}

impl RadialProfile for FlatProfile {
    fn height(&self, _: f64) -> f64 {
        0.0
    }
    fn slope(&self, _: f64) -> f64 {
        0.0
    }
    fn second_derivative(&self, _: f64) -> f64 {
        0.0
    }
    fn decay_scale(&self) -> f64 {
        self.scale
    }
    fn slope_over_radius_at_origin(&self) -> f64 {
        0.0
    }
}

/// `f(r) = δ·exp(−r²/2σ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBump {
    delta: f64,
    sigma: f64,
}

impl GaussianBump {
    pub fn new(delta: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!("gaussian sigma must be positive, got {sigma}")));
        }
        if !delta.is_finite() {
            return Err(Error::invalid(format!("gaussian delta must be finite, got {delta}")));
        }
        Ok(GaussianBump { delta, sigma })
    }

    /// The bump of width `σ` and height `σ√η`.
    pub fn from_eta(eta: f64, sigma: f64) -> Result<Self> {
        if !(eta >= 0.0 && eta.is_finite()) {
            return Err(Error::invalid(format!("eta must be non-negative, got {eta}")));
        }
        GaussianBump::new(sigma * eta.sqrt(), sigma)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `η = (δ/σ)²`.
    pub fn eta(&self) -> f64 {
        (self.delta / self.sigma).powi(2)
    }

    fn gauss(&self, r: f64) -> f64 {
        (-r * r / (2.0 * self.sigma * self.sigma)).exp()
    }
}

impl RadialProfile for GaussianBump {
    fn height(&self, r: f64) -> f64 {
        self.delta * self.gauss(r)
    }
    fn slope(&self, r: f64) -> f64 {
        -self.delta * r / (self.sigma * self.sigma) * self.gauss(r)
    }
    fn second_derivative(&self, r: f64) -> f64 {
        let s2 = self.sigma * self.sigma;
        self.delta / s2 * (r * r / s2 - 1.0) * self.gauss(r)
    }
    fn decay_scale(&self) -> f64 {
        self.sigma
    }
    fn slope_over_radius_at_origin(&self) -> f64 {
        -self.delta / (self.sigma * self.sigma)
    }
}

/// A profile assembled from closures for `f`, `ḟ` and `f̈`.
pub struct FnProfile<F, D, D2> {
    pub height: F,
    pub slope: D,
    pub second_derivative: D2,
    pub decay_scale: f64,
}

impl<F, D, D2> RadialProfile for FnProfile<F, D, D2>
where
    F: Fn(f64) -> f64 + Send + Sync,
    D: Fn(f64) -> f64 + Send + Sync,
    D2: Fn(f64) -> f64 + Send + Sync,
{
    fn height(&self, r: f64) -> f64 {
        (self.height)(r)
    }
    fn slope(&self, r: f64) -> f64 {
        (self.slope)(r)
    }
    fn second_derivative(&self, r: f64) -> f64 {
        (self.second_derivative)(r)
    }
    fn decay_scale(&self) -> f64 {
        self.decay_scale
    }
}

/// Derivatives of a height-only profile from Richardson-extrapolated central
/// differences.
///
/// The base step is `1e-3 · decay_scale`; the two-level extrapolation leaves
/// an `O(h⁴)` truncation error, so first and second derivatives both come out
/// near 1e-10 relative for smooth profiles. The profile is extended evenly to
/// negative `r`.
pub struct FiniteDifferenceProfile<F> {
    height: F,
    decay_scale: f64,
    step: f64,
}

impl<F: Fn(f64) -> f64 + Send + Sync> FiniteDifferenceProfile<F> {
    pub fn new(height: F, decay_scale: f64) -> Result<Self> {
        if !(decay_scale > 0.0 && decay_scale.is_finite()) {
            return Err(Error::invalid(format!("decay_scale must be positive, got {decay_scale}")));
        }
        Ok(FiniteDifferenceProfile {
            height,
            decay_scale,
            step: 1e-3 * decay_scale,
        })
    }

    fn f(&self, r: f64) -> f64 {
        (self.height)(r.abs())
    }

    fn d1(&self, r: f64, h: f64) -> f64 {
        (self.f(r + h) - self.f(r - h)) / (2.0 * h)
    }

    fn d2(&self, r: f64, h: f64) -> f64 {
        (self.f(r + h) - 2.0 * self.f(r) + self.f(r - h)) / (h * h)
    }
}

impl<F: Fn(f64) -> f64 + Send + Sync> RadialProfile for FiniteDifferenceProfile<F> {
    fn height(&self, r: f64) -> f64 {
        (self.height)(r)
    }
    fn slope(&self, r: f64) -> f64 {
        let h = self.step;
        (4.0 * self.d1(r, h / 2.0) - self.d1(r, h)) / 3.0
    }
    fn second_derivative(&self, r: f64) -> f64 {
        let h = self.step;
        (4.0 * self.d2(r, h / 2.0) - self.d2(r, h)) / 3.0
    }
    fn decay_scale(&self) -> f64 {
        self.decay_scale
    }
    fn slope_over_radius_at_origin(&self) -> f64 {
        // ḟ(r)/r → f̈(0) for an even profile.
        self.second_derivative(0.0)
    }
}

/// Clamped cubic spline through tabulated `(r, f)` samples with `ḟ = 0` at
/// both ends. Beyond the last sample the surface is flat at the last height.
#[derive(Debug, Clone)]
pub struct TabulatedProfile {
    r: Vec<f64>,
    f: Vec<f64>,
    // Second derivatives at the knots.
    m: Vec<f64>,
    decay_scale: f64,
}

impl TabulatedProfile {
    pub fn new(r: Vec<f64>, f: Vec<f64>, decay_scale: f64) -> Result<Self> {
        if r.len() != f.len() || r.len() < 4 {
            return Err(Error::invalid("tabulated profile needs at least 4 (r, f) pairs of equal length"));
        }
        if r[0] != 0.0 {
            return Err(Error::invalid("tabulated profile must start at r = 0"));
        }
        if r.windows(2).any(|w| !(w[1] > w[0])) || r.iter().chain(&f).any(|v| !v.is_finite()) {
            return Err(Error::invalid("tabulated radii must be finite and strictly increasing"));
        }
        if !(decay_scale > 0.0 && decay_scale.is_finite()) {
            return Err(Error::invalid(format!("decay_scale must be positive, got {decay_scale}")));
        }
        let m = clamped_spline_moments(&r, &f);
        Ok(TabulatedProfile { r, f, m, decay_scale })
    }

    /// Parse `r,f` lines. Blank lines, `#` comments and a non-numeric header
    /// line are skipped.
    pub fn from_csv(text: &str, decay_scale: f64) -> Result<Self> {
        let mut r = Vec::new();
        let mut f = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split(',').map(str::trim);
            let (Some(a), Some(b), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(Error::invalid(format!("profile line {}: expected two columns", lineno + 1)));
            };
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(a), Ok(b)) => {
                    r.push(a);
                    f.push(b);
                }
                _ if r.is_empty() && lineno == 0 => continue,
                _ => return Err(Error::invalid(format!("profile line {}: cannot parse numbers", lineno + 1))),
            }
        }
        TabulatedProfile::new(r, f, decay_scale)
    }

    fn locate(&self, r: f64) -> Option<(usize, f64, f64, f64)> {
        let last = *self.r.last().expect("non-empty");
        if r >= last {
            return None;
        }
        let i = self.r.partition_point(|&x| x <= r).saturating_sub(1);
        let h = self.r[i + 1] - self.r[i];
        let a = (self.r[i + 1] - r) / h;
        Some((i, h, a, 1.0 - a))
    }
}

impl RadialProfile for TabulatedProfile {
    fn height(&self, r: f64) -> f64 {
        let r = r.abs();
        match self.locate(r) {
            None => *self.f.last().expect("non-empty"),
            Some((i, h, a, b)) => {
                a * self.f[i]
                    + b * self.f[i + 1]
                    + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
            }
        }
    }
    fn slope(&self, r: f64) -> f64 {
        match self.locate(r.abs()) {
            None => 0.0,
            Some((i, h, a, b)) => {
                let d = (self.f[i + 1] - self.f[i]) / h
                    + h / 6.0 * (-(3.0 * a * a - 1.0) * self.m[i] + (3.0 * b * b - 1.0) * self.m[i + 1]);
                d * r.signum()
            }
        }
    }
    fn second_derivative(&self, r: f64) -> f64 {
        match self.locate(r.abs()) {
            None => 0.0,
            Some((i, _, a, b)) => a * self.m[i] + b * self.m[i + 1],
        }
    }
    fn decay_scale(&self) -> f64 {
        self.decay_scale
    }
    fn slope_over_radius_at_origin(&self) -> f64 {
        self.m[0]
    }
}

// Knot second derivatives of the cubic spline with zero end slopes
// (tridiagonal system, Thomas algorithm).
fn clamped_spline_moments(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    let mut lower = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    diag[0] = h[0] / 3.0;
    upper[0] = h[0] / 6.0;
    rhs[0] = (y[1] - y[0]) / h[0];
    for i in 1..n - 1 {
        lower[i] = h[i - 1] / 6.0;
        diag[i] = (h[i - 1] + h[i]) / 3.0;
        upper[i] = h[i] / 6.0;
        rhs[i] = (y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1];
    }
    lower[n - 1] = h[n - 2] / 6.0;
    diag[n - 1] = h[n - 2] / 3.0;
    rhs[n - 1] = -(y[n - 1] - y[n - 2]) / h[n - 2];

    for i in 1..n {
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    let mut m = vec![0.0; n];
    m[n - 1] = rhs[n - 1] / diag[n - 1];
    for i in (0..n - 1).rev() {
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    }
    m
}
