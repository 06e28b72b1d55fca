use super::RadialProfile;

/// A surface given as a graph `z = h(x, y)` that is flat outside a disc.
pub trait GraphSurface: Send + Sync {
    fn height(&self, x: f64, y: f64) -> f64;
    /// `(h_x, h_y)`.
    fn gradient(&self, x: f64, y: f64) -> [f64; 2];
    /// `(h_xx, h_xy, h_yy)`.
    fn hessian(&self, x: f64, y: f64) -> [f64; 3];
    /// Radius of the origin-centred disc outside which `h` and its
    /// derivatives are negligible.
    fn support_radius(&self) -> f64;
}

impl<S: GraphSurface + ?Sized> GraphSurface for &S {
    fn height(&self, x: f64, y: f64) -> f64 {
        (**self).height(x, y)
    }
    fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        (**self).gradient(x, y)
    }
    fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        (**self).hessian(x, y)
    }
    fn support_radius(&self) -> f64 {
        (**self).support_radius()
    }
}

/// Inverse metric, volume factor, connection terms and curvatures of a
/// Monge patch at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MongeGeometry {
    pub inverse_metric: [[f64; 2]; 2],
    pub sqrt_det_g: f64,
    /// `D_j = ∂_i(√g g^{ij})/√g`.
    pub div_terms: [f64; 2],
    pub gaussian_curvature: f64,
    pub mean_curvature: f64,
}

pub fn monge_patch_geometry(surface: &(impl GraphSurface + ?Sized), x: f64, y: f64) -> MongeGeometry {
    let [p, q] = surface.gradient(x, y);
    let [hxx, hxy, hyy] = surface.hessian(x, y);
    let w2 = 1.0 + p * p + q * q;
    let w = w2.sqrt();
    // √g g^{ij} = A/w with A the adjugate of the metric.
    let a = [[1.0 + q * q, -p * q], [-p * q, 1.0 + p * p]];
    let div_a = [q * hxy - p * hyy, p * hxy - q * hxx];
    let wx = (p * hxx + q * hxy) / w;
    let wy = (p * hxy + q * hyy) / w;
    let div = |j: usize| (div_a[j] / w - (a[0][j] * wx + a[1][j] * wy) / w2) / w;
    MongeGeometry {
        inverse_metric: [[a[0][0] / w2, a[0][1] / w2], [a[1][0] / w2, a[1][1] / w2]],
        sqrt_det_g: w,
        div_terms: [div(0), div(1)],
        gaussian_curvature: (hxx * hyy - hxy * hxy) / (w2 * w2),
        mean_curvature: ((1.0 + q * q) * hxx - 2.0 * p * q * hxy + (1.0 + p * p) * hyy) / (2.0 * w2 * w),
    }
}

/// Support radius of a radial profile: the first quarter-scale sample past
/// which `|f|`, `|ḟ|` and `|f̈|` (in units of the decay scale) stay below
/// 1e-12 out to 100 scales.
pub fn profile_support_radius(profile: &(impl RadialProfile + ?Sized)) -> f64 {
    let s = profile.decay_scale();
    let steps = 400;
    let mut radius = s;
    for i in (1..=steps).rev() {
        let r = s * i as f64 / 4.0;
        let big = (profile.height(r) / s).abs() > 1e-12
            || profile.slope(r).abs() > 1e-12
            || (profile.second_derivative(r) * s).abs() > 1e-12;
        if big {
            radius = s * (i + 1) as f64 / 4.0;
            break;
        }
    }
    radius.max(s)
}

/// `h(x, y) = f(|(x, y) − center|)`.
pub struct RadialGraph<P> {
    pub profile: P,
    pub center: [f64; 2],
    support_radius: f64,
}

impl<P: RadialProfile> RadialGraph<P> {
    pub fn new(profile: P) -> Self {
        RadialGraph::centered_at(profile, [0.0, 0.0])
    }

    pub fn centered_at(profile: P, center: [f64; 2]) -> Self {
        let support = profile_support_radius(&profile);
        let offset = center[0].hypot(center[1]);
        RadialGraph {
            profile,
            center,
            support_radius: support + offset,
        }
    }

    /// Radius of this bump's own support disc around its centre.
    pub fn local_support_radius(&self) -> f64 {
        self.support_radius - self.center[0].hypot(self.center[1])
    }

    fn local(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (dx, dy) = (x - self.center[0], y - self.center[1]);
        (dx, dy, dx.hypot(dy))
    }
}

impl<P: RadialProfile> GraphSurface for RadialGraph<P> {
    fn height(&self, x: f64, y: f64) -> f64 {
        self.profile.height(self.local(x, y).2)
    }

    fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        let (dx, dy, r) = self.local(x, y);
        if r == 0.0 {
            return [0.0, 0.0];
        }
        let d = self.profile.slope(r);
        [d * dx / r, d * dy / r]
    }

    fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        let (dx, dy, r) = self.local(x, y);
        if r < 1e-8 * self.profile.decay_scale() {
            let c = self.profile.slope_over_radius_at_origin();
            return [c, 0.0, c];
        }
        let d2 = self.profile.second_derivative(r);
        let d_over_r = self.profile.slope(r) / r;
        let (cx, cy) = (dx / r, dy / r);
        [
            d2 * cx * cx + d_over_r * cy * cy,
            (d2 - d_over_r) * cx * cy,
            d2 * cy * cy + d_over_r * cx * cx,
        ]
    }

    fn support_radius(&self) -> f64 {
        self.support_radius
    }
}

/// A graph surface assembled from closures.
pub struct FnGraph<H, D, D2> {
    pub height: H,
    pub gradient: D,
    pub hessian: D2,
    pub support_radius: f64,
}

impl<H, D, D2> GraphSurface for FnGraph<H, D, D2>
where
    H: Fn(f64, f64) -> f64 + Send + Sync,
    D: Fn(f64, f64) -> [f64; 2] + Send + Sync,
    D2: Fn(f64, f64) -> [f64; 3] + Send + Sync,
{
    fn height(&self, x: f64, y: f64) -> f64 {
        (self.height)(x, y)
    }
    fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        (self.gradient)(x, y)
    }
    fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        (self.hessian)(x, y)
    }
    fn support_radius(&self) -> f64 {
        self.support_radius
    }
}
