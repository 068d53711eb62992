//! Goos-Hänchen shift `p·y_GH` against incidence angle, complex vs. pure
//! quaternionic, at `n² = 1/2`. Below critical the complex shift vanishes while
//! the quaternionic one does not; well above critical the quaternionic shift
//! is the larger one.

use quatgh::ghshift::{evaluate_shift, Method};
use quatgh::{PotentialSpec, ScatterScenario};

fn main() -> quatgh::Result<()> {
    let complex = PotentialSpec::complex(0.5)?;
    let quat = PotentialSpec::pure_quaternionic(3f64.sqrt() / 2.0, 0.0)?;
    let general = PotentialSpec::new(0.1, 0.6, 0.3)?;

    println!(
        "{:>8} {:>9} {:>12} {:>12} {:>12}",
        "theta", "regime", "complex", "quaternion", "general(fd)"
    );
    for i in 0..=30 {
        let theta = 0.05 * f64::from(i);
        let c = evaluate_shift(
            &ScatterScenario::new(theta, 1.0, complex)?,
            Method::Analytic,
        )?;
        let q = evaluate_shift(&ScatterScenario::new(theta, 1.0, quat)?, Method::Analytic)?;
        let g = evaluate_shift(
            &ScatterScenario::new(theta, 1.0, general)?,
            Method::FiniteDifference,
        )?;
        println!(
            "{theta:>8.3} {:>9} {:>12.5} {:>12.5} {:>12.5}",
            q.regime.as_str(),
            c.shift_adim,
            q.shift_adim,
            g.shift_adim
        );
    }

    let s = ScatterScenario::new(std::f64::consts::FRAC_PI_3, 1.0, complex)?;
    let a = evaluate_shift(&s, Method::Analytic)?.shift_adim;
    let fd = evaluate_shift(&s, Method::FiniteDifference)?.shift_adim;
    println!(
        "\ncomplex at pi/3: analytic {a:.15}, finite difference {fd:.15}, 4*sqrt(3) = {:.15}",
        4.0 * 3f64.sqrt()
    );
    Ok(())
}
