//! First-Born amplitudes and cross sections.
//!
//! Radially symmetric surfaces reduce the two-dimensional Born integral to
//! one-dimensional Bessel integrals over the profile; Gaussian bumps admit
//! closed forms to first order in `η = (δ/σ)²`. [`amplitude_oracle_2d`]
//! evaluates the unreduced integral for any graph surface.

mod gaussian;
mod oracle;
mod radial;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use gaussian::{gaussian_amplitude_first_order, gaussian_total_cross_section, total_cross_section_numeric};
pub use oracle::amplitude_oracle_2d;
pub use radial::{amplitude_backward, amplitude_forward, amplitude_radial, amplitude_radial_pre_ibp};

/// Below this value of `sin(Θ/2)` radial amplitudes use the forward formula.
pub const FORWARD_THRESHOLD: f64 = 1e-8;

/// Relative tolerance on `|k_in| = |k_out|`.
pub const ELASTIC_TOLERANCE: f64 = 1e-12;

/// Incident wavenumber and scattering angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringKinematics {
    k: f64,
    theta: f64,
}

impl ScatteringKinematics {
    /// `theta` is reduced to `[0, 2π)`.
    pub fn new(k: f64, theta: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::invalid(format!("wavenumber k must be positive and finite, got {k}")));
        }
        if !theta.is_finite() {
            return Err(Error::invalid(format!("scattering angle must be finite, got {theta}")));
        }
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        Ok(ScatteringKinematics { k, theta })
    }

    /// Kinematics of an elastic process `k_in → k_out`; `Θ` is the
    /// counter-clockwise angle from `k_in` to `k_out`.
    pub fn from_vectors(k_in: [f64; 2], k_out: [f64; 2]) -> Result<Self> {
        let a = check_elastic(k_in, k_out)?;
        let cross = k_in[0] * k_out[1] - k_in[1] * k_out[0];
        let dot = k_in[0] * k_out[0] + k_in[1] * k_out[1];
        ScatteringKinematics::new(a, cross.atan2(dot))
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `sin(Θ/2)`, non-negative on `[0, 2π)`.
    pub fn half_sine(&self) -> f64 {
        (0.5 * self.theta).sin().max(0.0)
    }

    /// `|Δk| = 2k sin(Θ/2)`.
    pub fn delta_k(&self) -> f64 {
        2.0 * self.k * self.half_sine()
    }

    /// `k_in` along `+x`, `k_out` rotated from it by `Θ`.
    pub fn lab_vectors(&self) -> ([f64; 2], [f64; 2]) {
        let (s, c) = self.theta.sin_cos();
        ([self.k, 0.0], [self.k * c, self.k * s])
    }

    /// The frame in which the momentum transfer `k_in − k_out` points along
    /// `+x`: `k_in = k(sin Θ/2, cos Θ/2)`, `k_out = k(−sin Θ/2, cos Θ/2)`.
    pub fn transfer_frame_vectors(&self) -> ([f64; 2], [f64; 2]) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        ([self.k * s, self.k * c], [-self.k * s, self.k * c])
    }
}

pub(crate) fn check_elastic(k_in: [f64; 2], k_out: [f64; 2]) -> Result<f64> {
    let a = k_in[0].hypot(k_in[1]);
    let b = k_out[0].hypot(k_out[1]);
    if !(a > 0.0 && a.is_finite()) || !((a - b).abs() <= ELASTIC_TOLERANCE * a) {
        return Err(Error::Kinematics { k_in: a, k_out: b });
    }
    Ok(a)
}

/// Coefficients `(λ₁, λ₂)` of the geometric potential `λ₁K + λ₂M²`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CurvatureCouplings {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl CurvatureCouplings {
    /// `(1/2, −1/2)`, the values obtained by squeezing a thin shell onto the
    /// surface.
    pub const THIN_LAYER: CurvatureCouplings = CurvatureCouplings {
        lambda1: 0.5,
        lambda2: -0.5,
    };

    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        if !(lambda1.is_finite() && lambda2.is_finite()) {
            return Err(Error::invalid(format!("couplings must be finite, got ({lambda1}, {lambda2})")));
        }
        Ok(CurvatureCouplings { lambda1, lambda2 })
    }
}

/// A complex scattering amplitude, dimension `length^(1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Amplitude(pub Complex64);

impl Amplitude {
    pub const ZERO: Amplitude = Amplitude(Complex64::new(0.0, 0.0));

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

impl From<Complex64> for Amplitude {
    fn from(z: Complex64) -> Self {
        Amplitude(z)
    }
}

/// `e^{−3πi/4}`, the phase shared by every radially symmetric amplitude.
pub fn born_phase() -> Complex64 {
    Complex64::from_polar(1.0, -0.75 * PI)
}

/// `√(π/2k)·e^{−3πi/4}`.
pub(crate) fn radial_prefactor(k: f64) -> Complex64 {
    born_phase() * (PI / (2.0 * k)).sqrt()
}

/// `dσ/dΘ = |f|²`.
pub fn differential_cross_section(f: Amplitude) -> f64 {
    f.0.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinematics() {
        let kin = ScatteringKinematics::new(2.0, -PI / 2.0).unwrap();
        assert!((kin.theta() - 1.5 * PI).abs() < 1e-15);
        assert!((kin.delta_k() - 2.0 * 2.0 * (0.75 * PI).sin()).abs() < 1e-15);
        assert!(ScatteringKinematics::new(0.0, 1.0).is_err());
        assert!(ScatteringKinematics::new(1.0, f64::NAN).is_err());
        assert_eq!(ScatteringKinematics::new(1.0, 0.0).unwrap().delta_k(), 0.0);
    }

    #[test]
    fn frames() {
        let kin = ScatteringKinematics::new(1.5, 2.0).unwrap();
        for (a, b) in [kin.lab_vectors(), kin.transfer_frame_vectors()] {
            let back = ScatteringKinematics::from_vectors(a, b).unwrap();
            assert!((back.theta() - 2.0).abs() < 1e-12);
            assert!((back.k() - 1.5).abs() < 1e-14);
        }
        let (a, b) = kin.transfer_frame_vectors();
        assert!((a[1] - b[1]).abs() < 1e-15 && (a[0] - b[0] - kin.delta_k()).abs() < 1e-14);
        assert!(matches!(
            ScatteringKinematics::from_vectors([1.0, 0.0], [0.0, 1.1]),
            Err(Error::Kinematics { .. })
        ));
    }

    #[test]
    fn cross_section_of_unit_phase() {
        assert_eq!(differential_cross_section(Amplitude::ZERO), 0.0);
        assert!((differential_cross_section(Amplitude(born_phase())) - 1.0).abs() < 1e-15);
    }
}
