//! Coherent scattering from a 3×3 patch of a triangular lattice of bumps.

use std::f64::consts::PI;

use geoscatter::born::{differential_cross_section, gaussian_amplitude_first_order};
use geoscatter::lattice::{composite_amplitude, structure_factor_sum, Arrangement};
use geoscatter::{CurvatureCouplings, GaussianBump, LatticeSpec, ScatteringKinematics};

fn main() -> geoscatter::Result<()> {
    let bump = GaussianBump::from_eta(0.01, 1.0)?;
    let lattice = LatticeSpec::triangular(10.0, (-1, 1), (-1, 1))?;
    for issue in lattice.diagnostics(bump.sigma(), Some(bump.eta())) {
        println!("warning: {issue}");
    }
    let couplings = CurvatureCouplings::THIN_LAYER;
    let arrangement = Arrangement::Lattice(lattice);

    println!("sigma*k   theta    |C|^2      |f|^2");
    for theta in [PI / 6.0, PI / 4.0] {
        for k in [0.3, 0.6, 0.9] {
            let (k_in, k_out) = ScatteringKinematics::new(k, theta)?.lab_vectors();
            let total = composite_amplitude(
                &arrangement,
                |kin| Ok(gaussian_amplitude_first_order(&bump, kin, couplings)),
                k_in,
                k_out,
            )?;
            let c = structure_factor_sum(&lattice.centers(), k_in, k_out)?;
            println!(
                "{k:7.2} {theta:8.4} {:10.4} {:10.4e}",
                c.norm_sqr(),
                differential_cross_section(total)
            );
        }
    }
    Ok(())
}
