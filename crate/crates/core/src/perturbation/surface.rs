use super::PerturbationSpec;
use crate::geometry::{profile_support_radius, GraphSurface, RadialProfile};

/// Covariant metric `g̃_ij = g_ij + ε g_ε,ij` in polar coordinates `(r, θ)`.
pub fn perturbed_metric(spec: &PerturbationSpec, r: f64, theta: f64) -> [[f64; 2]; 2] {
    let d = spec.base.slope(r);
    let mut rr = 0.0;
    let mut rt = 0.0;
    for h in spec.harmonics() {
        let n = h.order as f64;
        let (sn, cn) = (n * theta).sin_cos();
        if let Some(a) = &h.cos_part {
            rr += 2.0 * d * a.slope(r) * cn;
            rt -= n * d * a.height(r) * sn;
        }
        if let Some(b) = &h.sin_part {
            rr += 2.0 * d * b.slope(r) * sn;
            rt += n * d * b.height(r) * cn;
        }
    }
    let eps = spec.epsilon;
    [[1.0 + d * d + eps * rr, eps * rt], [eps * rt, r * r]]
}

/// Coefficient functions `K_n` and `M_n` multiplying `cos nθ` (for `aₙ`) or
/// `sin nθ` (for `bₙ`) in the first-order curvature corrections.
pub(crate) fn harmonic_curvatures(
    base: &(impl RadialProfile + ?Sized),
    part: &(impl RadialProfile + ?Sized),
    n: f64,
    r: f64,
) -> (f64, f64) {
    let d = base.slope(r);
    let d2 = base.second_derivative(r);
    let w = 1.0 + d * d;
    let (a, ad, add) = (part.height(r), part.slope(r), part.second_derivative(r));
    let k = (r * d * add - n * n * d2 * a) / (r * r * w * w) + (1.0 - 3.0 * d * d) * d2 * ad / (r * w.powi(3));
    let m = -n * n * a / (2.0 * r * r * w.sqrt()) - 3.0 * d * d2 * ad / (2.0 * w.powf(2.5))
        + (ad + r * add) / (2.0 * r * w.powf(1.5));
    (k, m)
}

/// `(K_ε, M_ε)`: the first-order changes of Gaussian and mean curvature, so
/// that `K̃ = K + εK_ε` and `M̃ = M + εM_ε`.
pub fn curvature_corrections(spec: &PerturbationSpec, r: f64, theta: f64) -> (f64, f64) {
    let mut k = 0.0;
    let mut m = 0.0;
    for h in spec.harmonics() {
        let n = h.order as f64;
        let (sn, cn) = (n * theta).sin_cos();
        if let Some(a) = &h.cos_part {
            let (ka, ma) = harmonic_curvatures(spec.base.as_ref(), a.as_ref(), n, r);
            k += ka * cn;
            m += ma * cn;
        }
        if let Some(b) = &h.sin_part {
            let (kb, mb) = harmonic_curvatures(spec.base.as_ref(), b.as_ref(), n, r);
            k += kb * sn;
            m += mb * sn;
        }
    }
    (k, m)
}

/// The full surface `z = f(r) + ε Σ (aₙ cos nθ + bₙ sin nθ)` as a graph,
/// exact in `ε`.
pub struct PerturbedGraph {
    spec: PerturbationSpec,
    support_radius: f64,
}

impl PerturbedGraph {
    pub fn new(spec: &PerturbationSpec) -> Self {
        let mut support = profile_support_radius(spec.base.as_ref());
        for h in spec.harmonics() {
            for p in [&h.cos_part, &h.sin_part].into_iter().flatten() {
                support = support.max(profile_support_radius(p.as_ref()));
            }
        }
        PerturbedGraph {
            spec: spec.clone(),
            support_radius: support,
        }
    }

    /// The same harmonics with a different `ε`.
    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        let mut spec = self.spec.clone();
        spec.epsilon = epsilon;
        PerturbedGraph {
            spec,
            support_radius: self.support_radius,
        }
    }

    // Height and its polar derivatives (u, u_r, u_θ, u_rr, u_rθ, u_θθ).
    fn polar(&self, r: f64, t: f64) -> [f64; 6] {
        let base = &self.spec.base;
        let mut u = [base.height(r), base.slope(r), 0.0, base.second_derivative(r), 0.0, 0.0];
        let eps = self.spec.epsilon;
        for h in self.spec.harmonics() {
            let n = h.order as f64;
            let (sn, cn) = (n * t).sin_cos();
            let terms = [(&h.cos_part, cn, -n * sn), (&h.sin_part, sn, n * cn)];
            for (part, ang, ang_d) in terms {
                let Some(p) = part else { continue };
                let (v, vd, vdd) = (p.height(r), p.slope(r), p.second_derivative(r));
                u[0] += eps * v * ang;
                u[1] += eps * vd * ang;
                u[2] += eps * v * ang_d;
                u[3] += eps * vdd * ang;
                u[4] += eps * vd * ang_d;
                u[5] -= eps * v * n * n * ang;
            }
        }
        u
    }

    fn at(&self, x: f64, y: f64) -> (f64, f64, f64, [f64; 6]) {
        let floor = 1e-9 * self.spec.base.decay_scale();
        let r = x.hypot(y).max(floor);
        let t = y.atan2(x);
        (r, t.cos(), t.sin(), self.polar(r, t))
    }
}

impl GraphSurface for PerturbedGraph {
    fn height(&self, x: f64, y: f64) -> f64 {
        self.at(x, y).3[0]
    }

    fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        let (r, c, s, u) = self.at(x, y);
        [u[1] * c - u[2] * s / r, u[1] * s + u[2] * c / r]
    }

    fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        let (r, c, s, [_, ur, ut, urr, urt, utt]) = self.at(x, y);
        let (r2, cs, c2s2) = (r * r, c * s, c * c - s * s);
        let xx = urr * c * c - 2.0 * urt * cs / r + utt * s * s / r2 + ur * s * s / r + 2.0 * ut * cs / r2;
        let yy = urr * s * s + 2.0 * urt * cs / r + utt * c * c / r2 + ur * c * c / r - 2.0 * ut * cs / r2;
        let xy = urr * cs + urt * c2s2 / r - utt * cs / r2 - ur * cs / r - ut * c2s2 / r2;
        [xx, xy, yy]
    }

    fn support_radius(&self) -> f64 {
        self.support_radius
    }
}
