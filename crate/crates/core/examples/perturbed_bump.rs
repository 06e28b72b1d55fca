//! A Gaussian bump with small dipole and quadrupole deformations: the
//! general harmonic integral, its closed form, and the Z factors.

use std::f64::consts::PI;

use geoscatter::perturbation::{perturbation_amplitude, perturbed_gaussian_amplitude_first_order, z_factors};
use geoscatter::{CurvatureCouplings, GaussianBump, PerturbedGaussianSpec, QuadratureOptions, ScatteringKinematics};

fn main() -> geoscatter::Result<()> {
    let bump = GaussianBump::from_eta(1e-4, 1.0)?;
    let spec = PerturbedGaussianSpec::new(bump, 1.0, 1.0, 1.0, 1.0, 1e-3)?;
    let general = spec.to_perturbation_spec();
    for issue in general.validate() {
        println!("warning: {issue}");
    }
    let couplings = CurvatureCouplings::THIN_LAYER;
    let opts = QuadratureOptions::default();

    for theta in [0.0, PI / 4.0, 2.0, PI] {
        let kin = ScatteringKinematics::new(1.0, theta)?;
        let numeric = perturbation_amplitude(&general, kin, couplings, &opts)?;
        let closed = perturbed_gaussian_amplitude_first_order(&spec, kin, couplings);
        let (z1, z2) = z_factors(&spec, kin, couplings)?;
        println!(
            "theta = {theta:.4}: f_eps = {:+.6e}{:+.6e}i  closed {:+.6e}{:+.6e}i  Z1 = {z1:+.5} Z2 = {z2:+.5}",
            numeric.re(),
            numeric.im(),
            closed.re(),
            closed.im(),
        );
    }
    Ok(())
}
