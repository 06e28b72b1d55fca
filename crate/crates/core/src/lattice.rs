//! Surfaces made of several well-separated bumps.
//!
//! A bump translated to `c` scatters with the extra phase `e^{i(k−k′)·c}`.
//! Identical bumps therefore share one amplitude multiplied by the
//! structure factor `C = Σ_j e^{i(k−k′)·c_j}`, which has a closed form on a
//! finite lattice.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use crate::born::{check_elastic, Amplitude, ScatteringKinematics};
use crate::error::{Error, Result};
use crate::geometry::{GraphSurface, RadialGraph, RadialProfile};

/// Bumps closer than this many widths trigger a separation warning.
pub const SEPARATION_RATIO: f64 = 5.0;

/// Largest `(m₂−m₁)(n₂−n₁)η` tolerated by the first-order lattice amplitude.
pub const LATTICE_ETA_LIMIT: f64 = 0.1;

/// Phases within this distance of a multiple of `2π` use the degenerate
/// limit of the geometric sum.
const DEGENERATE_PHASE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpCenter {
    pub c: [f64; 2],
}

impl BumpCenter {
    pub fn new(x: f64, y: f64) -> Self {
        BumpCenter { c: [x, y] }
    }

    pub const ORIGIN: BumpCenter = BumpCenter { c: [0.0, 0.0] };
}

/// Sites `m·a + n·b` for `m₁ ≤ m ≤ m₂`, `n₁ ≤ n ≤ n₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub a_vec: [f64; 2],
    pub b_vec: [f64; 2],
    pub m_range: (i32, i32),
    pub n_range: (i32, i32),
}

impl LatticeSpec {
    pub fn new(a_vec: [f64; 2], b_vec: [f64; 2], m_range: (i32, i32), n_range: (i32, i32)) -> Result<Self> {
        if a_vec.iter().chain(&b_vec).any(|v| !v.is_finite()) {
            return Err(Error::invalid("lattice basis vectors must be finite"));
        }
        if m_range.0 > m_range.1 || n_range.0 > n_range.1 {
            return Err(Error::invalid(format!(
                "lattice index ranges must satisfy m1 <= m2 and n1 <= n2, got {m_range:?} and {n_range:?}"
            )));
        }
        Ok(LatticeSpec {
            a_vec,
            b_vec,
            m_range,
            n_range,
        })
    }

    /// Triangular lattice with `a = a(1, 0)` and `b = a(1/2, √3/2)`.
    pub fn triangular(a: f64, m_range: (i32, i32), n_range: (i32, i32)) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::invalid(format!("lattice constant must be positive, got {a}")));
        }
        LatticeSpec::new([a, 0.0], [0.5 * a, 0.5 * 3f64.sqrt() * a], m_range, n_range)
    }

    pub fn site_count(&self) -> usize {
        let m = (self.m_range.1 - self.m_range.0 + 1) as usize;
        let n = (self.n_range.1 - self.n_range.0 + 1) as usize;
        m * n
    }

    /// Centres in `m`-major order.
    pub fn centers(&self) -> Vec<BumpCenter> {
        let mut out = Vec::with_capacity(self.site_count());
        for m in self.m_range.0..=self.m_range.1 {
            for n in self.n_range.0..=self.n_range.1 {
                let (m, n) = (m as f64, n as f64);
                out.push(BumpCenter::new(
                    m * self.a_vec[0] + n * self.b_vec[0],
                    m * self.a_vec[1] + n * self.b_vec[1],
                ));
            }
        }
        out
    }

    /// `(m₂−m₁)(n₂−n₁)`, the factor multiplying `η` in the validity guard.
    pub fn span_product(&self) -> i64 {
        (self.m_range.1 - self.m_range.0) as i64 * (self.n_range.1 - self.n_range.0) as i64
    }

    /// Warnings for sites closer than [`SEPARATION_RATIO`] bump widths and,
    /// when `eta` is given, for `(m₂−m₁)(n₂−n₁)η ≥` [`LATTICE_ETA_LIMIT`].
    pub fn diagnostics(&self, bump_width: f64, eta: Option<f64>) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(d) = min_separation(&self.centers()) {
            if d < SEPARATION_RATIO * bump_width {
                out.push(format!(
                    "lattice sites only {:.3} bump widths apart (want >= {SEPARATION_RATIO})",
                    d / bump_width
                ));
            }
        }
        if let Some(eta) = eta {
            let guard = self.span_product() as f64 * eta;
            if guard >= LATTICE_ETA_LIMIT {
                // Round off the last-bit noise of η recovered from δ.
                let shown = (guard * 1e12).round() / 1e12;
                out.push(format!("(m₂−m₁)(n₂−n₁)η = {shown} ≥ {LATTICE_ETA_LIMIT}"));
            }
        }
        out
    }
}

fn min_separation(centers: &[BumpCenter]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (i, a) in centers.iter().enumerate() {
        for b in &centers[i + 1..] {
            let d = (a.c[0] - b.c[0]).hypot(a.c[1] - b.c[1]);
            best = Some(best.map_or(d, |x: f64| x.min(d)));
        }
    }
    best
}

fn transfer(k_in: [f64; 2], k_out: [f64; 2]) -> Result<[f64; 2]> {
    check_elastic(k_in, k_out)?;
    Ok([k_in[0] - k_out[0], k_in[1] - k_out[1]])
}

fn phase(dk: [f64; 2], c: &BumpCenter) -> Complex64 {
    Complex64::from_polar(1.0, dk[0] * c.c[0] + dk[1] * c.c[1])
}

/// `e^{i(k−k′)·c} f₀`: the amplitude of a bump moved to `c`.
pub fn translated_amplitude(f0: Amplitude, center: BumpCenter, k_in: [f64; 2], k_out: [f64; 2]) -> Result<Amplitude> {
    let dk = transfer(k_in, k_out)?;
    Ok(Amplitude(phase(dk, &center) * f0.0))
}

/// `Σ_j e^{i(k−k′)·c_j}`, summed in the given order.
pub fn structure_factor_sum(centers: &[BumpCenter], k_in: [f64; 2], k_out: [f64; 2]) -> Result<Complex64> {
    let dk = transfer(k_in, k_out)?;
    Ok(centers.iter().map(|c| phase(dk, c)).sum())
}

/// `Σ_{j=j₁}^{j₂} e^{ijx} = e^{ix(j₁+j₂)/2} sin(Nx/2)/sin(x/2)`, or `N` when
/// `x` is within [`DEGENERATE_PHASE`] of a multiple of `2π`.
fn geometric_sum(x: f64, j1: i32, j2: i32) -> Complex64 {
    let count = (j2 - j1 + 1) as f64;
    let mut xr = x.rem_euclid(TAU);
    if xr > PI {
        xr -= TAU;
    }
    if xr.abs() < DEGENERATE_PHASE {
        return Complex64::new(count, 0.0);
    }
    let middle = 0.5 * (j1 as f64 + j2 as f64);
    Complex64::from_polar((0.5 * count * xr).sin() / (0.5 * xr).sin(), xr * middle)
}

/// Closed-form structure factor of a finite lattice,
/// `C = [(e^{i(m₂+1)k_a} − e^{im₁k_a})(e^{i(n₂+1)k_b} − e^{in₁k_b})] / [(e^{ik_a} − 1)(e^{ik_b} − 1)]`
/// with `k_a = (k−k′)·a`, `k_b = (k−k′)·b`.
pub fn structure_factor_lattice(lattice: &LatticeSpec, k_in: [f64; 2], k_out: [f64; 2]) -> Result<Complex64> {
    let dk = transfer(k_in, k_out)?;
    let ka = dk[0] * lattice.a_vec[0] + dk[1] * lattice.a_vec[1];
    let kb = dk[0] * lattice.b_vec[0] + dk[1] * lattice.b_vec[1];
    Ok(geometric_sum(ka, lattice.m_range.0, lattice.m_range.1) * geometric_sum(kb, lattice.n_range.0, lattice.n_range.1))
}

/// `(k_a, k_b)` for the triangular lattice of constant `a` with `k` along
/// the first basis vector: `k_a = ak(1 − cos Θ)`, `k_b = (ak/2)(1 − cos Θ − √3 sin Θ)`.
pub fn triangular_lattice_kab(a: f64, k: f64, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (a * k * (1.0 - c), 0.5 * a * k * (1.0 - c - 3f64.sqrt() * s))
}

/// How identical bumps are arranged.
#[derive(Debug, Clone, PartialEq)]
pub enum Arrangement {
    Lattice(LatticeSpec),
    Centers(Vec<BumpCenter>),
}

impl Arrangement {
    pub fn structure_factor(&self, k_in: [f64; 2], k_out: [f64; 2]) -> Result<Complex64> {
        match self {
            Arrangement::Lattice(l) => structure_factor_lattice(l, k_in, k_out),
            Arrangement::Centers(c) => structure_factor_sum(c, k_in, k_out),
        }
    }

    pub fn centers(&self) -> Vec<BumpCenter> {
        match self {
            Arrangement::Lattice(l) => l.centers(),
            Arrangement::Centers(c) => c.clone(),
        }
    }
}

/// `C(k′, k)·f(k′, k)` for identical bumps, where `f_common` is the
/// amplitude of one bump centred at the origin.
pub fn composite_amplitude(
    arrangement: &Arrangement,
    f_common: impl FnOnce(ScatteringKinematics) -> Result<Amplitude>,
    k_in: [f64; 2],
    k_out: [f64; 2],
) -> Result<Amplitude> {
    let c = arrangement.structure_factor(k_in, k_out)?;
    let f = f_common(ScatteringKinematics::from_vectors(k_in, k_out)?)?;
    Ok(Amplitude(c * f.0))
}

/// `Σ_j e^{i(k−k′)·c_j} f_j(k′, k)` for bumps that may differ, summed in
/// the given order.
pub fn composite_amplitude_general<F>(bumps: &[(BumpCenter, F)], k_in: [f64; 2], k_out: [f64; 2]) -> Result<Amplitude>
where
    F: Fn(ScatteringKinematics) -> Result<Amplitude>,
{
    let kin = ScatteringKinematics::from_vectors(k_in, k_out)?;
    let mut total = Complex64::new(0.0, 0.0);
    for (center, f) in bumps {
        total += translated_amplitude(f(kin)?, *center, k_in, k_out)?.0;
    }
    Ok(Amplitude(total))
}

/// Radial bumps placed at the given centres, as one graph surface.
pub struct CompositeSurface {
    bumps: Vec<RadialGraph<Arc<dyn RadialProfile>>>,
}

impl CompositeSurface {
    /// `profiles` holds either one shared profile or one per centre.
    pub fn new(centers: &[BumpCenter], profiles: Vec<Arc<dyn RadialProfile>>) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::invalid("composite surface needs at least one centre"));
        }
        let shared = match profiles.len() {
            1 => true,
            n if n == centers.len() => false,
            n => {
                return Err(Error::invalid(format!(
                    "expected 1 or {} profiles, got {n}",
                    centers.len()
                )))
            }
        };
        let bumps = centers
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let p = if shared { &profiles[0] } else { &profiles[i] };
                RadialGraph::centered_at(p.clone(), c.c)
            })
            .collect();
        Ok(CompositeSurface { bumps })
    }

    /// Pairs of centres whose support discs intersect.
    pub fn overlaps(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.bumps.iter().enumerate() {
            for (j, b) in self.bumps.iter().enumerate().skip(i + 1) {
                let d = (a.center[0] - b.center[0]).hypot(a.center[1] - b.center[1]);
                if d < a.local_support_radius() + b.local_support_radius() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl GraphSurface for CompositeSurface {
    fn height(&self, x: f64, y: f64) -> f64 {
        self.bumps.iter().map(|b| b.height(x, y)).sum()
    }

    fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        self.bumps.iter().fold([0.0, 0.0], |acc, b| {
            let g = b.gradient(x, y);
            [acc[0] + g[0], acc[1] + g[1]]
        })
    }

    fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        self.bumps.iter().fold([0.0; 3], |acc, b| {
            let h = b.hessian(x, y);
            [acc[0] + h[0], acc[1] + h[1], acc[2] + h[2]]
        })
    }

    fn support_radius(&self) -> f64 {
        self.bumps.iter().map(|b| b.support_radius()).fold(0.0, f64::max)
    }
}
