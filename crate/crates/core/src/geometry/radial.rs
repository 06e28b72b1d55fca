use super::RadialProfile;
use crate::error::Result;
use crate::quadrature::{integrate_oscillatory, QuadratureOptions};

/// `G = ḟ/√(1+ḟ²)`, the sine of the slope angle.
pub fn g_function(profile: &(impl RadialProfile + ?Sized), r: f64) -> f64 {
    let d = profile.slope(r);
    d / d.hypot(1.0)
}

/// `Ġ = f̈/(1+ḟ²)^{3/2}`.
pub fn g_derivative(profile: &(impl RadialProfile + ?Sized), r: f64) -> f64 {
    let d = profile.slope(r);
    profile.second_derivative(r) / (1.0 + d * d).powf(1.5)
}

/// Gaussian and mean curvature `(K, M)` at radius `r`.
///
/// `K = GĠ/r`, `M = (G/r + Ġ)/2`. At `r = 0` the removable singularity is
/// resolved through [`curvatures_at_origin`].
pub fn curvatures(profile: &(impl RadialProfile + ?Sized), r: f64) -> (f64, f64) {
    if r == 0.0 {
        return curvatures_at_origin(profile);
    }
    let g = g_function(profile, r);
    let gd = g_derivative(profile, r);
    (g * gd / r, 0.5 * (g / r + gd))
}

/// Limits of `K` and `M` at the apex from `c = lim ḟ/r`: `G/r → c`, so
/// `K → c·f̈(0)` and `M → (c + f̈(0))/2`.
pub fn curvatures_at_origin(profile: &(impl RadialProfile + ?Sized)) -> (f64, f64) {
    let c = profile.slope_over_radius_at_origin();
    let d2 = profile.second_derivative(0.0);
    (c * d2, 0.5 * (c + d2))
}

/// Metric and curvature data of a radial surface at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceGeometryAtPoint {
    /// `g_rr = 1 + ḟ²`.
    pub g11: f64,
    /// `g_θθ = r²`.
    pub g22: f64,
    pub g: f64,
    pub g_dot: f64,
    pub gaussian_curvature: f64,
    pub mean_curvature: f64,
}

pub fn geometry_at(profile: &(impl RadialProfile + ?Sized), r: f64) -> SurfaceGeometryAtPoint {
    let d = profile.slope(r);
    let (k, m) = curvatures(profile, r);
    SurfaceGeometryAtPoint {
        g11: 1.0 + d * d,
        g22: r * r,
        g: g_function(profile, r),
        g_dot: g_derivative(profile, r),
        gaussian_curvature: k,
        mean_curvature: m,
    }
}

/// `∫ K dA = 2π ∫₀^∞ K √(1+ḟ²) r dr`, which vanishes for asymptotically
/// flat profiles.
pub fn total_gaussian_curvature(
    profile: &(impl RadialProfile + ?Sized),
    options: &QuadratureOptions,
) -> Result<f64> {
    let mut opts = *options;
    opts.panel_width.get_or_insert(profile.decay_scale());
    // K·√(1+ḟ²)·r = G·Ġ·√(1+ḟ²)
    let integrand = |r: f64| {
        let d = profile.slope(r);
        g_function(profile, r) * g_derivative(profile, r) * d.hypot(1.0)
    };
    let res = integrate_oscillatory(integrand, 0.0, &opts)?;
    Ok(2.0 * std::f64::consts::PI * res.value)
}

/// Problems with a profile that would invalidate the radial formulas.
/// An empty list means the profile passed every check.
pub fn validate_profile(profile: &(impl RadialProfile + ?Sized)) -> Vec<String> {
    let mut issues = Vec::new();
    let s = profile.decay_scale();
    if !(s > 0.0 && s.is_finite()) {
        issues.push(format!("decay_scale must be positive, got {s}"));
        return issues;
    }
    let d0 = profile.slope(0.0);
    if d0.abs() > 1e-8 {
        issues.push(format!("profile slope at r = 0 is {d0:e}; a smooth apex needs 0"));
    }
    let c = profile.slope_over_radius_at_origin();
    if !c.is_finite() {
        issues.push("slope/r has no finite limit at r = 0".to_string());
    }
    let far = 10.0 * s;
    let g = g_function(profile, far);
    if !(far * g * g < 1e-8) {
        issues.push(format!(
            "profile does not decay: r·G(r)² = {:e} at r = 10·decay_scale = {far}",
            far * g * g
        ));
    }
    for i in 0..=200 {
        let r = 10.0 * s * i as f64 / 200.0;
        let v = [profile.height(r), profile.slope(r), profile.second_derivative(r)];
        if v.iter().any(|x| !x.is_finite()) {
            issues.push(format!("profile is not finite at r = {r}"));
            break;
        }
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{FlatProfile, FnProfile, GaussianBump};

    #[test]
    fn g_of_unit_slope() {
        let p = FnProfile {
            height: |r: f64| r,
            slope: |_| 1.0,
            second_derivative: |_| 0.0,
            decay_scale: 1.0,
        };
        assert!((g_function(&p, 0.3) - std::f64::consts::FRAC_1_SQRT_2).abs() < 2e-16);
    }

    #[test]
    fn flat_is_flat() {
        let p = FlatProfile::default();
        assert_eq!(g_function(&p, 1.0), 0.0);
        assert_eq!(curvatures(&p, 1.0), (0.0, 0.0));
        assert_eq!(curvatures(&p, 0.0), (0.0, 0.0));
        assert!(total_gaussian_curvature(&p, &QuadratureOptions::default()).unwrap().abs() < 1e-15);
    }

    #[test]
    fn gaussian_near_origin() {
        let g = GaussianBump::new(1.0, 1.0).unwrap();
        let r = 1e-6;
        assert!((g_function(&g, r) / r + 1.0).abs() < 1e-10);
        let (d, s) = (0.3, 0.7);
        let g = GaussianBump::new(d, s).unwrap();
        let (k, m) = curvatures_at_origin(&g);
        assert!((k - (d / (s * s)).powi(2)).abs() < 1e-14);
        assert!((m + d / (s * s)).abs() < 1e-14);
        let (k1, m1) = curvatures(&g, 1e-5);
        assert!((k1 - k).abs() < 1e-8 && (m1 - m).abs() < 1e-8);
    }

    #[test]
    fn sphere_cap() {
        let rho = 2.5;
        let p = FnProfile {
            height: move |r: f64| rho - (rho * rho - r * r).sqrt(),
            slope: move |r: f64| r / (rho * rho - r * r).sqrt(),
            second_derivative: move |r: f64| rho * rho / (rho * rho - r * r).powf(1.5),
            decay_scale: 1.0,
        };
        for &r in &[0.1, 0.8, 1.7, 2.3] {
            let (k, m) = curvatures(&p, r);
            assert!((k - 1.0 / (rho * rho)).abs() < 1e-12, "r={r}");
            assert!((m.abs() - 1.0 / rho).abs() < 1e-12, "r={r}");
        }
        let (k, m) = curvatures_at_origin(&p);
        assert!((k - 1.0 / (rho * rho)).abs() < 1e-6 && (m - 1.0 / rho).abs() < 1e-6);
    }

    #[test]
    fn curvatures_match_differences_of_g() {
        for (d, s) in [(1.0, 1.0), (3.0, 0.5), (0.1, 2.0)] {
            let p = GaussianBump::new(d, s).unwrap();
            let h = 1e-5 * s;
            for i in 1..=100 {
                let r = 5.0 * s * i as f64 / 100.0;
                let gd = (g_function(&p, r + h) - g_function(&p, r - h)) / (2.0 * h);
                let g = g_function(&p, r);
                let (k, m) = curvatures(&p, r);
                let (kf, mf) = (g * gd / r, 0.5 * (g / r + gd));
                let scale_k = k.abs().max(1e-3 / (s * s));
                let scale_m = m.abs().max(1e-3 / s);
                assert!((k - kf).abs() <= 1e-6 * scale_k, "K at r={r}");
                assert!((m - mf).abs() <= 1e-6 * scale_m, "M at r={r}");
            }
        }
    }

    #[test]
    fn gauss_bonnet() {
        let opts = QuadratureOptions::default();
        for (d, s) in [(1.0, 1.0), (3.0, 0.5), (0.1, 2.0)] {
            let p = GaussianBump::new(d, s).unwrap();
            let total = total_gaussian_curvature(&p, &opts).unwrap();
            assert!(total.abs() < 1e-8, "({d}, {s}): {total}");
        }
    }

    #[test]
    fn validation() {
        assert!(validate_profile(&GaussianBump::new(1.0, 1.0).unwrap()).is_empty());
        let cone = FnProfile {
            height: |r: f64| -r,
            slope: |_| -1.0,
            second_derivative: |_| 0.0,
            decay_scale: 1.0,
        };
        let issues = validate_profile(&cone);
        assert!(issues.iter().any(|m| m.contains("r = 0")));
        assert!(issues.iter().any(|m| m.contains("decay")));
    }
}
