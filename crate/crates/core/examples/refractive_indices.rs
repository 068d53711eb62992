//! Refractive indices, critical angles and refraction angles.
//!
//! A complex step with `V1 = E/2` and a pure quaternionic step with
//! `|V2 + iV3| = (√3/2) E` share the index `1/√2`, hence the critical angle π/4.

use quatgh::media::{
    critical_angle, refractive_index_complex, refractive_index_quat, snell_refraction_angle,
};
use quatgh::PotentialSpec;

fn main() -> quatgh::Result<()> {
    let complex = PotentialSpec::complex(0.5)?;
    let quat = PotentialSpec::pure_quaternionic(3f64.sqrt() / 2.0, 0.0)?;

    let n = refractive_index_complex(&complex)?;
    let nq = refractive_index_quat(&quat)?;
    println!(
        "complex     n = {n:.15}  theta_cri = {:.15}",
        critical_angle(n)?
    );
    println!(
        "quaternion  N = {nq:.15}  theta_cri = {:.15}",
        critical_angle(nq)?
    );
    println!("pi/4            {:.15}", std::f64::consts::FRAC_PI_4);

    println!("\n n^2  theta_cri/deg");
    for n2 in [0.25, 0.5, 0.75] {
        let vmod = f64::sqrt(1.0 - n2 * n2);
        let n = refractive_index_quat(&PotentialSpec::pure_quaternionic(vmod, 0.0)?)?;
        println!("{n2:4}  {:8.4}", critical_angle(n)?.to_degrees());
    }

    println!("\ntheta/deg  refraction/deg (n^2 = 1/2)");
    for deg in [0.0, 15.0, 30.0, 44.0, 46.0, 60.0] {
        match snell_refraction_angle(f64::to_radians(deg), n) {
            Some(t) => println!("{deg:9.1}  {:8.3}", t.to_degrees()),
            None => println!("{deg:9.1}  total reflection"),
        }
    }
    Ok(())
}
