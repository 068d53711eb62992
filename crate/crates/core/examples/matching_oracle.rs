//! Checks one scenario by hand: closed forms against the 4×4 matching solve,
//! continuity at the interface and the Schrödinger residual in each region.
//!
//! The region-I residual is large at oblique incidence: the `j·e^{p_z z}`
//! evanescent term does not solve the free equation unless `p_y = 0`.

use quatgh::oracle::{verify_continuity, verify_schrodinger, Region};
use quatgh::scatter::{
    evanescent_ratio, reflection_quat_general, reflection_quat_pure, solve_matching,
};
use quatgh::{PotentialSpec, ScatterScenario};

fn main() -> quatgh::Result<()> {
    let potential = PotentialSpec::pure_quaternionic(3f64.sqrt() / 2.0, 1.1)?;
    for theta in [0.0, 0.5, 1.2] {
        let s = ScatterScenario::new(theta, 1.0, potential)?;
        let amps = solve_matching(&s)?;
        println!("theta = {theta}");
        println!(
            "  |R_general - R_solve|  = {:.2e}",
            (reflection_quat_general(&s)? - amps.r).norm()
        );
        println!(
            "  |R_pure - R_solve|     = {:.2e}",
            (reflection_quat_pure(&s)? - amps.r).norm()
        );
        println!(
            "  |T~ - (T~/T) T|        = {:.2e}",
            (amps.tt - evanescent_ratio(&s)? * amps.t).norm()
        );
        println!(
            "  continuity residual    = {:.2e}",
            verify_continuity(&amps, &s)?
        );
        println!(
            "  Schrodinger, region II = {:.2e}",
            verify_schrodinger(&s, Region::II)?
        );
        println!(
            "  Schrodinger, region I  = {:.2e}",
            verify_schrodinger(&s, Region::I)?
        );
    }
    Ok(())
}
