//! `|R|` and `arg R` across incidence angles for a complex and a pure
//! quaternionic step of equal index. Above critical both are unimodular;
//! below critical only the quaternionic reflection carries a phase.

use quatgh::scatter::{reflection_complex, reflection_quat_pure, solve_matching};
use quatgh::{PotentialSpec, ScatterScenario};

fn main() -> quatgh::Result<()> {
    let complex = PotentialSpec::complex(0.5)?;
    let quat = PotentialSpec::pure_quaternionic(3f64.sqrt() / 2.0, 0.0)?;

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "deg", "|R|c", "argRc", "|R|q", "argRq"
    );
    for deg in (0..90).step_by(5) {
        let theta = f64::from(deg).to_radians();
        let rc = reflection_complex(&ScatterScenario::new(theta, 1.0, complex)?)?;
        let rq = reflection_quat_pure(&ScatterScenario::new(theta, 1.0, quat)?)?;
        println!(
            "{deg:>6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            rc.norm(),
            rc.arg(),
            rq.norm(),
            rq.arg()
        );
    }

    // Full amplitude set of the matching problem at one angle.
    let s = ScatterScenario::new(0.4, 1.0, quat)?;
    let a = solve_matching(&s)?;
    println!("\ntheta = 0.4, pure quaternionic:");
    println!("  R = {:.6}   R~ = {:.6}", a.r, a.rt);
    println!("  T = {:.6}   T~ = {:.6}", a.t, a.tt);
    println!("  alpha = {:.6}   beta = {:.6}", a.alpha, a.beta);
    Ok(())
}
