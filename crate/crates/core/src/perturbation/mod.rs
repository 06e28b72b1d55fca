//! Small departures from cylindrical symmetry:
//! `z = f(r) + ε Σₙ [aₙ(r) cos nθ + bₙ(r) sin nθ]`.
//!
//! Everything here is first order in `ε`. The polar angle `θ` of the
//! harmonics is measured from the momentum transfer `k − k′`, with `k′`
//! obtained by rotating `k` counter-clockwise through `Θ`
//! (see [`ScatteringKinematics::transfer_frame_vectors`]).
//!
//! [`ScatteringKinematics::transfer_frame_vectors`]: crate::born::ScatteringKinematics::transfer_frame_vectors

mod amplitude;
mod surface;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{GaussianBump, RadialProfile};
use crate::specfun::MAX_HARMONIC_ORDER;

pub use amplitude::{
    perturbation_amplitude, perturbed_cross_section, perturbed_gaussian_amplitude_first_order, z_factors,
};
pub use surface::{curvature_corrections, perturbed_metric, PerturbedGraph};

/// Largest tolerated `ε·Σ(|aₙ| + |bₙ|)/|f|` before validation complains.
pub const SMALLNESS_LIMIT: f64 = 0.1;

/// One angular harmonic: `aₙ(r) cos nθ + bₙ(r) sin nθ`. A missing part is
/// identically zero.
#[derive(Clone)]
pub struct Harmonic {
    pub order: u32,
    pub cos_part: Option<Arc<dyn RadialProfile>>,
    pub sin_part: Option<Arc<dyn RadialProfile>>,
}

impl Harmonic {
    pub fn new(order: u32, cos_part: Option<Arc<dyn RadialProfile>>, sin_part: Option<Arc<dyn RadialProfile>>) -> Result<Self> {
        if order == 0 || order > MAX_HARMONIC_ORDER as u32 {
            return Err(Error::invalid(format!(
                "harmonic order must lie in 1..={MAX_HARMONIC_ORDER}, got {order}"
            )));
        }
        Ok(Harmonic {
            order,
            cos_part,
            sin_part,
        })
    }

    fn parts(&self) -> impl Iterator<Item = (&'static str, &Arc<dyn RadialProfile>)> {
        [("a", &self.cos_part), ("b", &self.sin_part)]
            .into_iter()
            .filter_map(|(name, p)| p.as_ref().map(|p| (name, p)))
    }
}

impl std::fmt::Debug for Harmonic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Harmonic")
            .field("order", &self.order)
            .field("cos_part", &self.cos_part.is_some())
            .field("sin_part", &self.sin_part.is_some())
            .finish()
    }
}

/// A radial base profile plus finitely many harmonics, scaled by `ε`.
#[derive(Clone, Debug)]
pub struct PerturbationSpec {
    pub epsilon: f64,
    pub base: Arc<dyn RadialProfile>,
    /// Sorted by order, no repeats.
    harmonics: Vec<Harmonic>,
}

impl std::fmt::Debug for dyn RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RadialProfile(decay_scale = {})", self.decay_scale())
    }
}

impl PerturbationSpec {
    pub fn new(epsilon: f64, base: Arc<dyn RadialProfile>, mut harmonics: Vec<Harmonic>) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::invalid(format!("epsilon must be finite, got {epsilon}")));
        }
        harmonics.sort_by_key(|h| h.order);
        if let Some(w) = harmonics.windows(2).find(|w| w[0].order == w[1].order) {
            return Err(Error::invalid(format!("harmonic order {} given twice", w[0].order)));
        }
        Ok(PerturbationSpec {
            epsilon,
            base,
            harmonics,
        })
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    pub fn harmonic(&self, order: u32) -> Option<&Harmonic> {
        self.harmonics.iter().find(|h| h.order == order)
    }

    /// Violations of the smallness and regularity assumptions; empty when
    /// the perturbation is acceptable.
    ///
    /// Smallness is sampled on `r ∈ (0, 3·decay_scale]`, where the base
    /// profile carries its weight. Regularity requires `aₙ, bₙ = O(r^min(n,2))`
    /// at the apex, checked from the local power law at `1e-6·decay_scale`.
    pub fn validate(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let scale = self.base.decay_scale();
        let mut worst: f64 = 0.0;
        let mut worst_r = 0.0;
        for i in 1..=300 {
            let r = 3.0 * scale * i as f64 / 300.0;
            let sum: f64 = self
                .harmonics
                .iter()
                .flat_map(|h| h.parts())
                .map(|(_, p)| p.height(r).abs())
                .sum();
            let ratio = self.epsilon.abs() * sum / self.base.height(r).abs();
            let ratio = if ratio.is_nan() { 0.0 } else { ratio };
            if ratio > worst {
                worst = ratio;
                worst_r = r;
            }
        }
        if worst > SMALLNESS_LIMIT {
            issues.push(format!(
                "perturbation not small: eps*sum(|a_n|+|b_n|)/|f| = {worst:.3} at r = {worst_r:.3} exceeds {SMALLNESS_LIMIT}"
            ));
        }
        let r0 = 1e-6 * scale;
        for h in &self.harmonics {
            let need = h.order.min(2) as f64;
            for (name, p) in h.parts() {
                let (v0, v1) = (p.height(r0).abs(), p.height(2.0 * r0).abs());
                if v0 < f64::MIN_POSITIVE && v1 < f64::MIN_POSITIVE {
                    continue;
                }
                let power = (v1 / v0).log2();
                if !(power >= need - 0.1) {
                    issues.push(format!(
                        "harmonic {name}_{} is not regular at r = 0: behaves like r^{power:.2}, needs r^{need}",
                        h.order
                    ));
                }
            }
        }
        issues
    }
}

/// The perturbed Gaussian bump with
/// `a₁ = (r/α₁)f`, `a₂ = (r/α₂)²f`, `b₁ = (r/β₁)f`, `b₂ = (r/β₂)²f`.
///
/// An infinite length switches the corresponding harmonic off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedGaussianSpec {
    pub bump: GaussianBump,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl PerturbedGaussianSpec {
    pub fn new(bump: GaussianBump, alpha1: f64, alpha2: f64, beta1: f64, beta2: f64, epsilon: f64) -> Result<Self> {
        for (name, v) in [("alpha1", alpha1), ("alpha2", alpha2), ("beta1", beta1), ("beta2", beta2)] {
            if !(v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !epsilon.is_finite() {
            return Err(Error::invalid(format!("epsilon must be finite, got {epsilon}")));
        }
        Ok(PerturbedGaussianSpec {
            bump,
            alpha1,
            alpha2,
            beta1,
            beta2,
            epsilon,
        })
    }

    /// The same surface as a general [`PerturbationSpec`].
    pub fn to_perturbation_spec(&self) -> PerturbationSpec {
        let part = |power: i32, length: f64| -> Option<Arc<dyn RadialProfile>> {
            length.is_finite().then(|| {
                Arc::new(PowerTimesProfile {
                    power,
                    coefficient: length.powi(-power),
                    base: self.bump,
                }) as Arc<dyn RadialProfile>
            })
        };
        let harmonics = vec![
            Harmonic::new(1, part(1, self.alpha1), part(1, self.beta1)).expect("order 1"),
            Harmonic::new(2, part(2, self.alpha2), part(2, self.beta2)).expect("order 2"),
        ];
        PerturbationSpec::new(self.epsilon, Arc::new(self.bump), harmonics).expect("valid by construction")
    }
}

/// `c·r^p·f(r)` with derivatives by the product rule.
#[derive(Debug, Clone, Copy)]
pub struct PowerTimesProfile<P> {
    pub power: i32,
    pub coefficient: f64,
    pub base: P,
}

impl<P: RadialProfile> RadialProfile for PowerTimesProfile<P> {
    fn height(&self, r: f64) -> f64 {
        self.coefficient * r.powi(self.power) * self.base.height(r)
    }

    fn slope(&self, r: f64) -> f64 {
        let p = self.power;
        let mut v = r.powi(p) * self.base.slope(r);
        if p >= 1 {
            v += p as f64 * r.powi(p - 1) * self.base.height(r);
        }
        self.coefficient * v
    }

    fn second_derivative(&self, r: f64) -> f64 {
        let p = self.power;
        let mut v = r.powi(p) * self.base.second_derivative(r);
        if p >= 1 {
            v += 2.0 * p as f64 * r.powi(p - 1) * self.base.slope(r);
        }
        if p >= 2 {
            v += (p * (p - 1)) as f64 * r.powi(p - 2) * self.base.height(r);
        }
        self.coefficient * v
    }

    fn decay_scale(&self) -> f64 {
        self.base.decay_scale()
    }

    fn slope_over_radius_at_origin(&self) -> f64 {
        match self.power {
            0 => self.coefficient * self.base.slope_over_radius_at_origin(),
            2 => 2.0 * self.coefficient * self.base.height(0.0),
            _ => f64::NAN,
        }
    }
}
