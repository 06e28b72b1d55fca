use std::f64::consts::{PI, TAU};

use super::{differential_cross_section, radial_prefactor, Amplitude, CurvatureCouplings, ScatteringKinematics};
use crate::error::Result;
use crate::geometry::GaussianBump;
use crate::quadrature::{integrate_periodic, QuadratureOptions};
use crate::specfun::{bessel_i, BesselOrder};

/// First-order-in-`η` amplitude of a Gaussian bump:
/// `√(π/2k)e^{−3πi/4} η [z(λ₁s² − 1/4) + (λ₂/4)(z²s⁴ + 2)] e^{−zs²}`
/// with `z = σ²k²`, `s = sin(Θ/2)`.
pub fn gaussian_amplitude_first_order(
    bump: &GaussianBump,
    kin: ScatteringKinematics,
    couplings: CurvatureCouplings,
) -> Amplitude {
    let k = kin.k();
    let s2 = kin.half_sine().powi(2);
    let z = (bump.sigma() * k).powi(2);
    let CurvatureCouplings { lambda1, lambda2 } = couplings;
    let bracket = z * (lambda1 * s2 - 0.25) + 0.25 * lambda2 * (z * z * s2 * s2 + 2.0);
    Amplitude(radial_prefactor(k) * (bump.eta() * bracket * (-z * s2).exp()))
}

/// `∫₀^{2π} |f(Θ)|² dΘ` by periodic trapezoid quadrature.
pub fn total_cross_section_numeric(
    mut amplitude_fn: impl FnMut(f64) -> Result<Amplitude>,
    options: &QuadratureOptions,
) -> Result<f64> {
    let res = integrate_periodic(|t| amplitude_fn(t).map(differential_cross_section), TAU, options)?;
    Ok(res.value)
}

/// Closed-form total cross section of the first-order Gaussian amplitude,
/// `(π²/256k) e^{−z} [p₀(z) I₀(z) + p₁(z) I₁(z)] η²` with `z = σ²k²`.
///
/// The exponentially scaled Bessel functions are used throughout, so the
/// value stays finite for any `z`.
pub fn gaussian_total_cross_section(bump: &GaussianBump, k: f64, couplings: CurvatureCouplings) -> f64 {
    let z = (bump.sigma() * k).powi(2);
    if !(k > 0.0 && z.is_finite()) {
        return f64::NAN;
    }
    let CurvatureCouplings {
        lambda1: l1,
        lambda2: l2,
    } = couplings;
    let p0 = 64.0 * l2 * l2
        + 64.0 * l2 * (2.0 * l1 - 1.0) * z
        + (16.0 - 64.0 * l1 + 128.0 * l1 * l1 + 16.0 * l1 * l2 + 35.0 * l2 * l2) * z * z
        + 4.0 * l2 * (16.0 * l1 + l2 - 4.0) * z.powi(3)
        + 8.0 * l2 * l2 * z.powi(4);
    let p1 = -2.0
        * ((32.0 * l1 * l1 + 80.0 * l1 * l2 + 11.0 * l2 * l2) * z
            + 4.0 * (16.0 * l1 * l1 + 5.0 * l2 * l2 + 6.0 * l1 * l2 - 8.0 * l1 - l2) * z * z
            + 4.0 * l2 * (l2 + 8.0 * l1 - 2.0) * z.powi(3)
            + 4.0 * l2 * l2 * z.powi(4));
    let i0 = bessel_i(BesselOrder::ZERO, z, true).expect("finite non-negative argument");
    let i1 = bessel_i(BesselOrder::ONE, z, true).expect("finite non-negative argument");
    PI * PI / (256.0 * k) * (p0 * i0 + p1 * i1) * bump.eta().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::born::born_phase;
    use num_complex::Complex64;

    fn couplings() -> [CurvatureCouplings; 4] {
        [(0.5, -0.5), (0.5, 0.5), (0.5, 0.0), (0.0, -0.5)].map(|(a, b)| CurvatureCouplings::new(a, b).unwrap())
    }

    #[test]
    fn first_order_special_angles() {
        let bump = GaussianBump::from_eta(0.1, 1.3).unwrap();
        for c in couplings() {
            for k in [0.5, 1.0, 2.0] {
                let z = (1.3 * k) * (1.3_f64 * k);
                let pre = (PI / (2.0 * k)).sqrt() * born_phase() * 0.1 / 4.0;
                let fwd = gaussian_amplitude_first_order(&bump, ScatteringKinematics::new(k, 0.0).unwrap(), c);
                let want: Complex64 = pre * (2.0 * c.lambda2 - z);
                assert!((fwd.0 - want).norm() <= 1e-14 * want.norm().max(1e-300));
                let back = gaussian_amplitude_first_order(&bump, ScatteringKinematics::new(k, PI).unwrap(), c);
                let want: Complex64 =
                    pre * (-z).exp() * ((4.0 * c.lambda1 - 1.0) * z + c.lambda2 * (2.0 + z * z));
                assert!((back.0 - want).norm() <= 1e-14 * want.norm());
            }
        }
    }

    #[test]
    fn zero_eta() {
        let bump = GaussianBump::from_eta(0.0, 1.0).unwrap();
        let kin = ScatteringKinematics::new(1.0, 1.0).unwrap();
        assert_eq!(gaussian_amplitude_first_order(&bump, kin, CurvatureCouplings::THIN_LAYER).0.norm(), 0.0);
        assert_eq!(gaussian_total_cross_section(&bump, 1.0, CurvatureCouplings::THIN_LAYER), 0.0);
    }

    #[test]
    fn numeric_total_of_constant() {
        let c = Amplitude(Complex64::new(0.3, -0.4));
        let t = total_cross_section_numeric(|_| Ok(c), &QuadratureOptions::default()).unwrap();
        assert!((t - TAU * 0.25).abs() < 1e-14);
    }

    #[test]
    fn closed_form_total_matches_angular_integral() {
        let opts = QuadratureOptions::with_tolerances(1e-300, 1e-13);
        for c in couplings() {
            for sk in [0.5, 1.0, 2.0, 4.0] {
                let bump = GaussianBump::from_eta(0.1, 1.0).unwrap();
                let num = total_cross_section_numeric(
                    |t| Ok(gaussian_amplitude_first_order(&bump, ScatteringKinematics::new(sk, t)?, c)),
                    &opts,
                )
                .unwrap();
                let ana = gaussian_total_cross_section(&bump, sk, c);
                assert!(((num - ana) / ana).abs() < 1e-8, "{c:?} sk={sk}: {num} vs {ana}");
            }
        }
    }

    #[test]
    fn small_z_limit() {
        let bump = GaussianBump::from_eta(0.2, 1e-6).unwrap();
        let c = CurvatureCouplings::new(0.3, -0.7).unwrap();
        let k = 1.0;
        let want = PI * PI * c.lambda2 * c.lambda2 / (4.0 * k) * 0.04;
        assert!(((gaussian_total_cross_section(&bump, k, c) - want) / want).abs() < 1e-9);
    }

    #[test]
    fn huge_z_stays_finite() {
        let bump = GaussianBump::from_eta(0.1, 1.0).unwrap();
        let v = gaussian_total_cross_section(&bump, 40.0, CurvatureCouplings::THIN_LAYER);
        assert!(v.is_finite() && v > 0.0);
    }
}
