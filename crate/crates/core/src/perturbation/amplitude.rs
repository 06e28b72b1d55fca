use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::surface::harmonic_curvatures;
use super::{PerturbationSpec, PerturbedGaussianSpec};
use crate::born::{
    born_phase, differential_cross_section, gaussian_amplitude_first_order, Amplitude, CurvatureCouplings,
    ScatteringKinematics, FORWARD_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::geometry::{curvatures, RadialProfile};
use crate::quadrature::{integrate_oscillatory_with_envelope, QuadratureOptions};
use crate::specfun::jn;

/// `J_m(x)` with the `x = 0` values taken exactly.
fn bessel(order: i32, x: f64) -> f64 {
    if x == 0.0 {
        if order == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        jn(order, x)
    }
}

/// First-order amplitude correction `f_ε` of a perturbed radial surface, so
/// that the full amplitude is `f + ε f_ε`.
///
/// Sums over `n = ±1, …, ±N` (N the highest harmonic present) of
/// `iⁿ ∫ dr {k² [cos Θ 𝒳[a] + sgn(n) sin Θ 𝒳[b]] J_{n+2}
///  + k [s 𝒴[a] − sgn(n) c 𝒴[b]] J_{n+1}
///  + r [2λ₁Kₙ + 4λ₂ M Mₙ − k² ḟ ȧ/(1+ḟ²)²] J_n}`, all Bessel functions
/// at `2kr s`, times `√(π/8k) e^{−3πi/4}`; `s = sin(Θ/2)`, `c = cos(Θ/2)`.
/// `Kₙ`, `Mₙ` and `ȧ` refer to the cosine harmonic `a_|n|`.
///
/// The operators are
/// `𝒳[φ] = nḟφ/(1+ḟ²) − rḟφ̇/(1+ḟ²)²` and
/// `𝒴[φ] = n(n+1)ḟφ/(r(1+ḟ²)) + (nf̈φ − 2ḟφ̇ − rḟφ̈)/(1+ḟ²)² − rf̈(1−3ḟ²)φ̇/(1+ḟ²)³`
/// with the signed `n`. Negative Bessel orders use `J_{−m} = (−1)^m J_m`.
///
/// At `Θ = 0` only the terms carrying `J₀` survive and are evaluated as such.
pub fn perturbation_amplitude(
    spec: &PerturbationSpec,
    kin: ScatteringKinematics,
    couplings: CurvatureCouplings,
    options: &QuadratureOptions,
) -> Result<Amplitude> {
    let k = kin.k();
    let (s, c) = (0.5 * kin.theta()).sin_cos();
    let q = if kin.half_sine() < FORWARD_THRESHOLD { 0.0 } else { kin.delta_k() };
    let (sin_t, cos_t) = kin.theta().sin_cos();
    let mut opts = *options;
    opts.panel_width.get_or_insert(spec.base.decay_scale());

    let signed: Vec<i32> = spec
        .harmonics()
        .iter()
        .flat_map(|h| [h.order as i32, -(h.order as i32)])
        .collect();
    let base = spec.base.as_ref();
    let CurvatureCouplings { lambda1, lambda2 } = couplings;

    let terms: Vec<Result<Complex64>> = signed
        .par_iter()
        .map(|&n| {
            let h = spec.harmonic(n.unsigned_abs()).expect("order present");
            let a = h.cos_part.as_deref();
            let b = h.sin_part.as_deref();
            let nf = n as f64;
            let sg = nf.signum();
            let coefficients = |r: f64| -> [f64; 3] {
                let d = base.slope(r);
                let d2 = base.second_derivative(r);
                let w = 1.0 + d * d;
                let x_op = |p: &dyn RadialProfile| nf * d * p.height(r) / w - r * d * p.slope(r) / (w * w);
                let y_op = |p: &dyn RadialProfile| {
                    let (v, vd, vdd) = (p.height(r), p.slope(r), p.second_derivative(r));
                    nf * (nf + 1.0) * d * v / (r * w) + (nf * d2 * v - 2.0 * d * vd - r * d * vdd) / (w * w)
                        - r * d2 * (1.0 - 3.0 * d * d) * vd / w.powi(3)
                };
                let mut c2 = 0.0;
                let mut c1 = 0.0;
                let mut c0 = 0.0;
                if let Some(a) = a {
                    c2 += k * k * cos_t * x_op(a);
                    c1 += k * s * y_op(a);
                    let (ka, ma) = harmonic_curvatures(base, a, nf.abs(), r);
                    let m = curvatures(base, r).1;
                    c0 += r * (2.0 * lambda1 * ka + 4.0 * lambda2 * m * ma - k * k * d * a.slope(r) / (w * w));
                }
                if let Some(b) = b {
                    c2 += k * k * sg * sin_t * x_op(b);
                    c1 -= k * sg * c * y_op(b);
                }
                [c2, c1, c0]
            };
            let integrand = |r: f64| {
                let [c2, c1, c0] = coefficients(r);
                c2 * bessel(n + 2, q * r) + c1 * bessel(n + 1, q * r) + c0 * bessel(n, q * r)
            };
            let envelope = |r: f64| {
                let [c2, c1, c0] = coefficients(r);
                let live = |order: i32, v: f64| if q == 0.0 && order != 0 { 0.0 } else { v.abs() };
                live(n + 2, c2) + live(n + 1, c1) + live(n, c0)
            };
            let res = integrate_oscillatory_with_envelope(integrand, envelope, q, &opts)?;
            Ok(i_power(n) * res.value)
        })
        .collect();

    let mut total = Complex64::new(0.0, 0.0);
    for t in terms {
        total += t?;
    }
    Ok(Amplitude(born_phase() * (PI / (8.0 * k)).sqrt() * total))
}

fn i_power(n: i32) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Closed-form `f_ε` of the perturbed Gaussian bump to first order in `η`:
///
/// `√(π/2k)e^{−3πi/4} η e^{−zs²} {−(σ⁴k²s²/2α₂²)[1/s² − z − 4λ₁(1 − zs²) + λ₂z²s⁴]
///  + (iσ²ks/2α₁)[−z + 4λ₁zs² + λ₂(2 + z²s⁴)]}`
///
/// with `z = σ²k²`, `s = sin(Θ/2)`. The `β` harmonics do not contribute at
/// this order.
pub fn perturbed_gaussian_amplitude_first_order(
    spec: &PerturbedGaussianSpec,
    kin: ScatteringKinematics,
    couplings: CurvatureCouplings,
) -> Amplitude {
    let k = kin.k();
    let sigma = spec.bump.sigma();
    let s = kin.half_sine();
    let s2 = s * s;
    let z = (sigma * k).powi(2);
    let CurvatureCouplings { lambda1, lambda2 } = couplings;
    // s²·csc²(Θ/2) = 1 keeps Θ = 0 finite.
    let alpha2_part = -(sigma.powi(4) * k * k / (2.0 * spec.alpha2 * spec.alpha2))
        * (1.0 - s2 * z - 4.0 * lambda1 * s2 * (1.0 - z * s2) + lambda2 * z * z * s2 * s2 * s2);
    let alpha1_part = sigma * sigma * k * s / (2.0 * spec.alpha1)
        * (-z + 4.0 * lambda1 * z * s2 + lambda2 * (2.0 + z * z * s2 * s2));
    let pre = born_phase() * (PI / (2.0 * k)).sqrt() * (spec.bump.eta() * (-z * s2).exp());
    Amplitude(pre * Complex64::new(alpha2_part, alpha1_part))
}

/// `(Z₁, Z₂)` with `f̃ = f (1 + ε(Z₁ + iZ₂))` for the perturbed Gaussian:
///
/// `Z₁ = (2σ²/α₂²)[1 − u − λ₂((1 − u)² + 1)/((4λ₁s² − 1)z + λ₂(u² + 2))]`,
/// `Z₂ = 2σ²ks/α₁`, with `u = zs²`.
///
/// Fails where the unperturbed first-order amplitude vanishes.
pub fn z_factors(
    spec: &PerturbedGaussianSpec,
    kin: ScatteringKinematics,
    couplings: CurvatureCouplings,
) -> Result<(f64, f64)> {
    let k = kin.k();
    let sigma = spec.bump.sigma();
    let s = kin.half_sine();
    let s2 = s * s;
    let z = (sigma * k).powi(2);
    let u = z * s2;
    let CurvatureCouplings { lambda1, lambda2 } = couplings;
    let first = (4.0 * lambda1 * s2 - 1.0) * z;
    let second = lambda2 * (u * u + 2.0);
    let denominator = first + second;
    // Scale of the individual contributions, to judge cancellation.
    let size = z * (4.0 * lambda1.abs() * s2 + 1.0) + lambda2.abs() * (u * u + 2.0);
    if denominator.abs() <= 1e-12 * size {
        return Err(Error::SingularConfiguration { k, theta: kin.theta() });
    }
    let z1 = 2.0 * sigma * sigma / (spec.alpha2 * spec.alpha2)
        * (1.0 - u - lambda2 * ((1.0 - u).powi(2) + 1.0) / denominator);
    let z2 = 2.0 * sigma * sigma * k * s / spec.alpha1;
    Ok((z1, z2))
}

/// `|f|²(1 + 2εZ₁)` with `f` the first-order Gaussian amplitude.
pub fn perturbed_cross_section(
    spec: &PerturbedGaussianSpec,
    kin: ScatteringKinematics,
    couplings: CurvatureCouplings,
) -> Result<f64> {
    let (z1, _) = z_factors(spec, kin, couplings)?;
    let f = gaussian_amplitude_first_order(&spec.bump, kin, couplings);
    Ok(differential_cross_section(f) * (1.0 + 2.0 * spec.epsilon * z1))
}
