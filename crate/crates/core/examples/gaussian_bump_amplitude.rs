//! Amplitude of a Gaussian bump: full radial quadrature against the
//! first-order closed form.

use std::f64::consts::PI;

use geoscatter::born::{amplitude_radial, differential_cross_section, gaussian_amplitude_first_order};
use geoscatter::{CurvatureCouplings, GaussianBump, QuadratureOptions, ScatteringKinematics};

fn main() -> geoscatter::Result<()> {
    let couplings = CurvatureCouplings::THIN_LAYER;
    let opts = QuadratureOptions::default();

    for eta in [0.01, 0.1, 0.5] {
        let bump = GaussianBump::from_eta(eta, 1.0)?;
        println!("eta = {eta}");
        for theta in [PI / 6.0, PI / 2.0, PI] {
            let kin = ScatteringKinematics::new(1.5, theta)?;
            let exact = amplitude_radial(&bump, kin, couplings, &opts)?;
            let first = gaussian_amplitude_first_order(&bump, kin, couplings);
            println!(
                "  theta = {theta:.4}: f = {:+.6e}{:+.6e}i  first order {:+.6e}{:+.6e}i  |f|^2 = {:.6e}",
                exact.re(),
                exact.im(),
                first.re(),
                first.im(),
                differential_cross_section(exact),
            );
        }
    }
    Ok(())
}
