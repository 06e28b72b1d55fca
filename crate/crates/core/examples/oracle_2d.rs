//! The two-dimensional Born integral over an arbitrary graph surface, used
//! here to confirm the radial reduction for an off-centre bump.

use geoscatter::born::{amplitude_oracle_2d, amplitude_radial};
use geoscatter::geometry::RadialGraph;
use geoscatter::lattice::translated_amplitude;
use geoscatter::{BumpCenter, CurvatureCouplings, GaussianBump, QuadratureOptions, ScatteringKinematics};

fn main() -> geoscatter::Result<()> {
    let bump = GaussianBump::from_eta(0.2, 1.0)?;
    let couplings = CurvatureCouplings::new(1.0, 0.5)?;
    let opts = QuadratureOptions::with_tolerances(1e-10, 1e-7);
    let center = [1.5, -0.5];
    let surface = RadialGraph::centered_at(bump, center);

    let kin = ScatteringKinematics::new(1.2, 2.0)?;
    let (k_in, k_out) = kin.lab_vectors();
    let oracle = amplitude_oracle_2d(&surface, k_in, k_out, couplings, &opts)?;
    let radial = amplitude_radial(&bump, kin, couplings, &opts)?;
    let shifted = translated_amplitude(radial, BumpCenter::new(center[0], center[1]), k_in, k_out)?;

    println!("2D integral   {:+.9e} {:+.9e}i", oracle.re(), oracle.im());
    println!("radial+shift  {:+.9e} {:+.9e}i", shifted.re(), shifted.im());
    Ok(())
}
