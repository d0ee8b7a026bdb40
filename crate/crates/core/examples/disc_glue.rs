//! The disc profile for a = 4/3 and its nonnegativity certificate. Pass a
//! value of a as the first argument to try others (for example 1.5).

use milnor_geom::cheeger::DeformedMetric;
use milnor_geom::disc_glue::{nonneg_certificate, ProfileFunction};
use milnor_geom::quat_lie::ReductiveSplit;

fn main() -> milnor_geom::Result<()> {
    let a: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("a number"))
        .unwrap_or(4.0 / 3.0);
    let profile = ProfileFunction::sine_cap(a, 1.0)?;
    println!(
        "plateau {:.6} reached at t0 = {:.6}",
        profile.plateau(),
        profile.t0()
    );
    for k in 0..=8 {
        let t = profile.t0() * k as f64 / 8.0;
        println!(
            "t = {t:8.4}  f = {:8.5}  orbit factor = {:.6}",
            profile.value(t),
            profile.orbit_metric_factor(t)
        );
    }
    let metric = DeformedMetric::new(ReductiveSplit::circle(1, 0)?, a)?;
    let cert = nonneg_certificate(&profile, &metric)?;
    for c in &cert.clauses {
        println!("{:<28} {:<5} {:.3e}", c.name, c.passed, c.value);
    }
    println!("certificate passed: {}", cert.passed());
    Ok(())
}
