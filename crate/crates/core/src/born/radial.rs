use super::{radial_prefactor, Amplitude, CurvatureCouplings, ScatteringKinematics, FORWARD_THRESHOLD};
use crate::error::{Error, Result};
use crate::geometry::{g_derivative, g_function, RadialProfile};
use crate::quadrature::{integrate_oscillatory, integrate_oscillatory_with_envelope, QuadratureOptions};
use crate::specfun::jn;

pub(crate) fn profile_options(profile: &(impl RadialProfile + ?Sized), options: &QuadratureOptions) -> QuadratureOptions {
    let mut opts = *options;
    opts.panel_width.get_or_insert(profile.decay_scale());
    opts
}

/// `√(π/2k)·e^{−3πi/4} ∫₀^∞ dr [(λ₂/2)(G²/r + rĠ²) J₀(qr)
///  + k s G² (2λ₁ + λ₂ − 1/(2s²)) J₁(qr)]` with `s = sin(Θ/2)`, `q = 2ks`.
///
/// For `s` below [`FORWARD_THRESHOLD`] the coefficient `1/s` blows up and
/// the call is answered by [`amplitude_forward`].
pub fn amplitude_radial(
    profile: &(impl RadialProfile + ?Sized),
    kin: ScatteringKinematics,
    couplings: CurvatureCouplings,
    options: &QuadratureOptions,
) -> Result<Amplitude> {
    let s = kin.half_sine();
    if s < FORWARD_THRESHOLD {
        return amplitude_forward(profile, kin.k(), couplings, options);
    }
    let k = kin.k();
    let q = kin.delta_k();
    let CurvatureCouplings { lambda1, lambda2 } = couplings;
    let c1 = k * s * (2.0 * lambda1 + lambda2 - 0.5 / (s * s));
    let parts = |r: f64| {
        let g = g_function(profile, r);
        let gd = g_derivative(profile, r);
        (0.5 * lambda2 * (g * g / r + r * gd * gd), c1 * g * g)
    };
    let integrand = |r: f64| {
        let (a, b) = parts(r);
        a * jn(0, q * r) + b * jn(1, q * r)
    };
    let envelope = |r: f64| {
        let (a, b) = parts(r);
        a.abs() + b.abs()
    };
    let res = integrate_oscillatory_with_envelope(integrand, envelope, q, &profile_options(profile, options))?;
    Ok(Amplitude(radial_prefactor(k) * res.value))
}

/// The same amplitude before the integration by parts that removes `GĠ`:
/// J₀ coefficient `−k²rs²G² + 2λ₁GĠ + (λ₂/2)(G²/r + 2GĠ + rĠ²)`, J₁
/// coefficient `−kG²/(2s) − krsGĠ`. Kept as an independent cross-check of
/// [`amplitude_radial`]; needs `Θ` away from 0.
pub fn amplitude_radial_pre_ibp(
    profile: &(impl RadialProfile + ?Sized),
    kin: ScatteringKinematics,
    couplings: CurvatureCouplings,
    options: &QuadratureOptions,
) -> Result<Amplitude> {
    let s = kin.half_sine();
    if s < FORWARD_THRESHOLD {
        return Err(Error::invalid(format!(
            "pre-integration-by-parts form needs sin(theta/2) >= {FORWARD_THRESHOLD}, got {s}"
        )));
    }
    let k = kin.k();
    let q = kin.delta_k();
    let CurvatureCouplings { lambda1, lambda2 } = couplings;
    let parts = |r: f64| {
        let g = g_function(profile, r);
        let gd = g_derivative(profile, r);
        let a = -k * k * r * s * s * g * g
            + 2.0 * lambda1 * g * gd
            + 0.5 * lambda2 * (g * g / r + 2.0 * g * gd + r * gd * gd);
        let b = -k * g * g / (2.0 * s) - k * r * s * g * gd;
        (a, b)
    };
    let integrand = |r: f64| {
        let (a, b) = parts(r);
        a * jn(0, q * r) + b * jn(1, q * r)
    };
    let envelope = |r: f64| {
        let (a, b) = parts(r);
        a.abs() + b.abs()
    };
    let res = integrate_oscillatory_with_envelope(integrand, envelope, q, &profile_options(profile, options))?;
    Ok(Amplitude(radial_prefactor(k) * res.value))
}

/// `Θ = 0`: `√(π/2k)·e^{−3πi/4} ∫₀^∞ [(λ₂/2)(G²/r + rĠ²) − (k²/2) r G²] dr`.
/// `λ₁` does not enter.
pub fn amplitude_forward(
    profile: &(impl RadialProfile + ?Sized),
    k: f64,
    couplings: CurvatureCouplings,
    options: &QuadratureOptions,
) -> Result<Amplitude> {
    check_k(k)?;
    let lambda2 = couplings.lambda2;
    let integrand = |r: f64| {
        let g = g_function(profile, r);
        let gd = g_derivative(profile, r);
        0.5 * lambda2 * (g * g / r + r * gd * gd) - 0.5 * k * k * r * g * g
    };
    let res = integrate_oscillatory(integrand, 0.0, &profile_options(profile, options))?;
    Ok(Amplitude(radial_prefactor(k) * res.value))
}

/// `Θ = π`: `√(π/2k)·e^{−3πi/4} ∫₀^∞ [(λ₂/2)(G²/r + rĠ²)J₀(2kr)
///  + k(2λ₁ + λ₂ − 1/2)G² J₁(2kr)] dr`.
pub fn amplitude_backward(
    profile: &(impl RadialProfile + ?Sized),
    k: f64,
    couplings: CurvatureCouplings,
    options: &QuadratureOptions,
) -> Result<Amplitude> {
    check_k(k)?;
    let CurvatureCouplings { lambda1, lambda2 } = couplings;
    let c1 = k * (2.0 * lambda1 + lambda2 - 0.5);
    let q = 2.0 * k;
    let parts = |r: f64| {
        let g = g_function(profile, r);
        let gd = g_derivative(profile, r);
        (0.5 * lambda2 * (g * g / r + r * gd * gd), c1 * g * g)
    };
    let integrand = |r: f64| {
        let (a, b) = parts(r);
        a * jn(0, q * r) + b * jn(1, q * r)
    };
    let envelope = |r: f64| {
        let (a, b) = parts(r);
        a.abs() + b.abs()
    };
    let res = integrate_oscillatory_with_envelope(integrand, envelope, q, &profile_options(profile, options))?;
    Ok(Amplitude(radial_prefactor(k) * res.value))
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("wavenumber k must be positive and finite, got {k}")))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::born::{born_phase, gaussian_amplitude_first_order};
    use crate::geometry::{FlatProfile, GaussianBump};

    const TL: CurvatureCouplings = CurvatureCouplings::THIN_LAYER;

    fn kin(k: f64, t: f64) -> ScatteringKinematics {
        ScatteringKinematics::new(k, t).unwrap()
    }

    #[test]
    fn flat_profile_gives_zero() {
        let p = FlatProfile::default();
        let o = QuadratureOptions::default();
        assert_eq!(amplitude_radial(&p, kin(1.0, 1.0), TL, &o).unwrap(), Amplitude::ZERO);
        assert_eq!(amplitude_radial_pre_ibp(&p, kin(1.0, 1.0), TL, &o).unwrap(), Amplitude::ZERO);
        assert_eq!(amplitude_forward(&p, 1.0, TL, &o).unwrap(), Amplitude::ZERO);
        assert_eq!(amplitude_backward(&p, 1.0, TL, &o).unwrap(), Amplitude::ZERO);
    }

    #[test]
    fn small_bump_matches_first_order_form() {
        let bump = GaussianBump::from_eta(0.01, 1.0).unwrap();
        let kn = kin(1.0, PI / 2.0);
        let num = amplitude_radial(&bump, kn, TL, &QuadratureOptions::default()).unwrap();
        let ana = gaussian_amplitude_first_order(&bump, kn, TL);
        assert!((num.0 - ana.0).norm() <= 0.02 * ana.0.norm());
    }

    #[test]
    fn phase_is_fixed() {
        let bump = GaussianBump::from_eta(0.3, 1.2).unwrap();
        for t in [0.0, 0.4, 2.0, PI, 4.0] {
            let f = amplitude_radial(&bump, kin(1.3, t), TL, &QuadratureOptions::default()).unwrap();
            assert!((f.0 / born_phase()).im.abs() <= 1e-12, "theta={t}");
        }
    }

    #[test]
    fn forward_ignores_lambda1() {
        let bump = GaussianBump::from_eta(0.1, 1.0).unwrap();
        let o = QuadratureOptions::default();
        let a = amplitude_forward(&bump, 1.0, CurvatureCouplings::new(0.0, -0.5).unwrap(), &o).unwrap();
        let b = amplitude_forward(&bump, 1.0, CurvatureCouplings::new(7.0, -0.5).unwrap(), &o).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn backward_matches_general_formula() {
        let bump = GaussianBump::from_eta(0.1, 1.0).unwrap();
        let o = QuadratureOptions::default();
        let c = CurvatureCouplings::new(0.3, 1.1).unwrap();
        let a = amplitude_backward(&bump, 1.4, c, &o).unwrap();
        let b = amplitude_radial(&bump, kin(1.4, PI), c, &o).unwrap();
        let d = amplitude_radial_pre_ibp(&bump, kin(1.4, PI), c, &o).unwrap();
        assert!((a.0 - b.0).norm() < 1e-9);
        assert!((a.0 - d.0).norm() < 1e-9);
    }

    #[test]
    fn pre_ibp_rejects_forward() {
        let bump = GaussianBump::from_eta(0.1, 1.0).unwrap();
        assert!(amplitude_radial_pre_ibp(&bump, kin(1.0, 0.0), TL, &QuadratureOptions::default()).is_err());
    }
}
