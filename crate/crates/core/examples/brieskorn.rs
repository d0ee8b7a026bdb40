//! Brieskorn links z_0^d + z_1^2 + ... + z_n^2 = 0 and the exotic RP^5.

use milnor_geom::classify::{brieskorn_classify, rp5_type};

fn main() -> milnor_geom::Result<()> {
    for (n, d) in [(3, 3), (3, 7), (5, 3), (5, 9), (7, 5)] {
        let c = brieskorn_classify(n, d)?;
        println!(
            "n = {n}, d = {d}: {:?} in dimension {}, exotic: {}",
            c.verdict, c.dimension, c.exotic
        );
    }
    for d in [1, 3, 5, 7, 9] {
        let t = rp5_type(d)?;
        println!(
            "RP^5 from d = {d}: oriented type {}, homeomorphism type {}",
            t.diffeo_type, t.homeo_type
        );
    }
    println!("note: {}", rp5_type(1)?.caveat);
    Ok(())
}
