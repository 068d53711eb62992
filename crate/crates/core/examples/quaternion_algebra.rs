//! Hamilton products, the `c1 + j·c2` split and the left/right action of `i`.
//!
//! ```text
//! cargo run --example quaternion_algebra
//! ```

use quatgh::qnum::{quat_mul, Quaternion};
use quatgh::ComplexNum;

fn main() {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    println!("i*j = {:.0}   j*i = {:.0}", i * j, j * i);
    println!("j*k = {:.0}   k*i = {:.0}", j * k, k * i);
    println!("i*j*k = {:.0}", i * j * k);

    let a = Quaternion::new(1.0, 2.0, -0.5, 0.25);
    let b = Quaternion::new(-0.3, 0.7, 1.1, 2.0);
    let ab = quat_mul(a, b);
    println!("\na = {a:.3}\nb = {b:.3}");
    println!("ab = {ab:.4}\nba = {:.4}", b * a);
    println!("|ab| - |a||b| = {:e}", ab.norm() - a.norm() * b.norm());

    // Split view and the j-switch identity j·c = conj(c)·j.
    let (c1, c2) = a.split();
    println!("\na = c1 + j c2 with c1 = {c1}, c2 = {c2}");
    let c = ComplexNum::new(0.6, -1.7);
    let lhs = j * Quaternion::from_complex(c);
    let rhs = Quaternion::from_complex(c.conj()) * j;
    println!("j c = {lhs:.3}\nconj(c) j = {rhs:.3}");

    // The Schrödinger operator acts with i from the left, the energy term from the right.
    println!(
        "\ni a = {:.3}\na i = {:.3}",
        a.left_mul_i(),
        a.right_mul_i()
    );
}
