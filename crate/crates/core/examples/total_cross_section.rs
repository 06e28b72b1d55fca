//! Total cross section of a Gaussian bump for several couplings: closed form
//! against a numeric angular integral of the radial amplitude.

use geoscatter::born::{amplitude_radial, gaussian_total_cross_section, total_cross_section_numeric};
use geoscatter::{CurvatureCouplings, GaussianBump, QuadratureOptions, ScatteringKinematics};

fn main() -> geoscatter::Result<()> {
    // Small η so the first-order closed form applies.
    let bump = GaussianBump::from_eta(1e-4, 1.0)?;
    let opts = QuadratureOptions::with_tolerances(1e-14, 1e-10);
    for (l1, l2) in [(0.5, -0.5), (0.5, 0.5), (0.5, 0.0), (0.0, -0.5)] {
        let c = CurvatureCouplings::new(l1, l2)?;
        for k in [0.5, 2.0] {
            let closed = gaussian_total_cross_section(&bump, k, c);
            let numeric = total_cross_section_numeric(
                |t| amplitude_radial(&bump, ScatteringKinematics::new(k, t)?, c, &opts),
                &opts,
            )?;
            println!("lambda = ({l1:+}, {l2:+}) k = {k}: {closed:.6e}  numeric {numeric:.6e}");
        }
    }
    Ok(())
}
