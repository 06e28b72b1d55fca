//! Forward and backward amplitudes of a custom profile, compared with the
//! general radial formula just off the special angles.

use std::f64::consts::PI;

use geoscatter::born::{amplitude_backward, amplitude_forward, amplitude_radial};
use geoscatter::geometry::FiniteDifferenceProfile;
use geoscatter::{CurvatureCouplings, QuadratureOptions, ScatteringKinematics};

fn main() -> geoscatter::Result<()> {
    // A sech² dimple, with derivatives by finite differences.
    let dimple = FiniteDifferenceProfile::new(|r: f64| -0.2 / r.cosh().powi(2), 1.0)?;
    let couplings = CurvatureCouplings::new(0.5, -0.25)?;
    let opts = QuadratureOptions::default();
    let k = 2.0;

    let fwd = amplitude_forward(&dimple, k, couplings, &opts)?;
    let near_fwd = amplitude_radial(&dimple, ScatteringKinematics::new(k, 1e-4)?, couplings, &opts)?;
    println!("forward      {:+.8e}  (theta = 1e-4: {:+.8e})", fwd.re(), near_fwd.re());

    let bwd = amplitude_backward(&dimple, k, couplings, &opts)?;
    let at_pi = amplitude_radial(&dimple, ScatteringKinematics::new(k, PI)?, couplings, &opts)?;
    println!("backward     {:+.8e}  (general formula: {:+.8e})", bwd.re(), at_pi.re());
    Ok(())
}
