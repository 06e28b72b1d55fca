use std::f64::consts::PI;

use num_complex::Complex64;

use super::{born_phase, check_elastic, Amplitude, CurvatureCouplings};
use crate::error::Result;
use crate::geometry::{monge_patch_geometry, GraphSurface};
use crate::quadrature::{integrate_disc_2d, QuadratureOptions};

/// The first-Born amplitude of an arbitrary graph surface by direct
/// two-dimensional quadrature:
///
/// `f = e^{−3πi/4}/√(8πk) ∫ d²x e^{i(k−k′)·x} B(x)`,
/// `B = (δ^{ij} − g^{ij})(−k_i k_j) − i D_j k_j + 2(λ₁K + λ₂M²)`,
///
/// where `D_j = ∂_i(√g g^{ij})/√g` and `k = k_in`. The integral runs over the
/// surface's support disc. Much slower than the radial formulas, but free of
/// any symmetry assumption.
pub fn amplitude_oracle_2d(
    surface: &(impl GraphSurface + ?Sized),
    k_in: [f64; 2],
    k_out: [f64; 2],
    couplings: CurvatureCouplings,
    options: &QuadratureOptions,
) -> Result<Amplitude> {
    let k = check_elastic(k_in, k_out)?;
    let dk = [k_in[0] - k_out[0], k_in[1] - k_out[1]];
    let CurvatureCouplings { lambda1, lambda2 } = couplings;
    let integrand = |x: f64, y: f64| {
        let g = monge_patch_geometry(surface, x, y);
        let gi = g.inverse_metric;
        let mut kinetic = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { 1.0 } else { 0.0 };
                kinetic -= (delta - gi[i][j]) * k_in[i] * k_in[j];
            }
        }
        let drift = g.div_terms[0] * k_in[0] + g.div_terms[1] * k_in[1];
        let potential = 2.0 * (lambda1 * g.gaussian_curvature + lambda2 * g.mean_curvature.powi(2));
        let b = Complex64::new(kinetic + potential, -drift);
        b * Complex64::from_polar(1.0, dk[0] * x + dk[1] * y)
    };
    let res = integrate_disc_2d(integrand, surface.support_radius(), options)?;
    Ok(Amplitude(born_phase() / (8.0 * PI * k).sqrt() * res.value))
}
