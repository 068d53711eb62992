//! Runs the seeded verification suite and summarizes it per check.
//!
//! ```text
//! cargo run --release --example verification_suite -- 1 100
//! ```

use std::collections::BTreeMap;

use quatgh::oracle::run_suite;

fn main() -> quatgh::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);

    let report = run_suite(seed, count)?;
    let mut by_name: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for c in &report.checks {
        let e = by_name.entry(&c.name).or_insert((0, 0, 0.0));
        e.0 += 1;
        e.1 += usize::from(!c.passed);
        e.2 = e.2.max(c.residual);
    }
    println!(
        "{:<34} {:>6} {:>6} {:>12}",
        "check", "runs", "failed", "max resid"
    );
    for (name, (runs, failed, worst)) in by_name {
        println!("{name:<34} {runs:>6} {failed:>6} {worst:>12.3e}");
    }
    println!("\n{report}");
    Ok(())
}
