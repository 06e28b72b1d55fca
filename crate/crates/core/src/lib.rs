//! First-Born scattering of a spinless particle by the geometry of an
//! asymptotically flat surface embedded in three-dimensional space.
//!
//! The particle feels the surface through the Laplace–Beltrami kinetic term
//! and a geometric potential `λ₁K + λ₂M²` built from the Gaussian and mean
//! curvatures. Treating the difference from the flat Laplacian as the
//! interaction, the crate computes
//!
//! * radially symmetric amplitudes as one-dimensional Bessel integrals
//!   ([`born::amplitude_radial`]) and their closed forms for Gaussian bumps,
//! * total cross sections ([`born::gaussian_total_cross_section`]),
//! * first-order corrections from small symmetry-breaking harmonics
//!   ([`perturbation`]),
//! * coherent sums over finite lattices of bumps ([`lattice`]),
//! * an independent two-dimensional quadrature of the full Born integral for
//!   arbitrary graph surfaces ([`born::amplitude_oracle_2d`]).
//!
//! All lengths share one user-chosen unit. Amplitudes carry dimension
//! `length^(1/2)` and differential cross sections dimension `length`.
//!
//! Runnable walkthroughs live under `crates/core/examples/`; the
//! `geoscatter` binary turns JSON run configurations into CSV tables.

pub mod born;
pub mod cli;
mod error;
pub mod geometry;
pub mod lattice;
pub mod perturbation;
pub mod quadrature;
pub mod specfun;

pub use born::{Amplitude, CurvatureCouplings, ScatteringKinematics};
pub use error::{Error, Result};
pub use geometry::{GaussianBump, GraphSurface, RadialProfile};
pub use lattice::{BumpCenter, LatticeSpec};
pub use perturbation::{Harmonic, PerturbationSpec, PerturbedGaussianSpec};
pub use quadrature::{QuadratureOptions, QuadratureResult, Truncation};
