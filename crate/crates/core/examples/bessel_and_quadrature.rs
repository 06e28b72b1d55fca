//! Special functions and the oscillatory quadrature engine on their own.
//!
//! Checks the Hankel transform `∫₀^∞ r e^{−r²/2} J₀(br) dr = e^{−b²/2}`.

use geoscatter::quadrature::integrate_oscillatory;
use geoscatter::specfun::{bessel_i, bessel_j, bessel_j_zeros, BesselOrder};
use geoscatter::QuadratureOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j0 = BesselOrder::ZERO;
    println!("J0(1)   = {:.15}", bessel_j(j0, 1.0)?);
    println!("J5(10)  = {:.15}", bessel_j(BesselOrder::new(5)?, 10.0)?);
    println!("e^-x I1(x) at x = 1000: {:.15}", bessel_i(BesselOrder::ONE, 1000.0, true)?);
    println!("first zeros of J0: {:?}", bessel_j_zeros(j0, 4)?);

    let opts = QuadratureOptions::default();
    for b in [0.5, 1.0, 3.0] {
        let integrand = |r: f64| r * (-r * r / 2.0).exp() * bessel_j(j0, b * r).unwrap();
        let res = integrate_oscillatory(integrand, b, &opts)?;
        println!(
            "b = {b}: {:.12} (exact {:.12}), {} panels, cut at r = {:.2}",
            res.value,
            (-b * b / 2.0_f64).exp(),
            res.panels_used,
            res.truncation_radius
        );
    }
    Ok(())
}
