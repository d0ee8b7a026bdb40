//! SO(3) actions on the Hopf S^7 with slopes (-3, 4n+1, 1, 4n+1), and
//! whether they can extend over D^8.

use milnor_geom::isotropy::{hopf_family, is_almost_free, mod56_family, oliver_obstruction};

fn main() -> milnor_geom::Result<()> {
    for n in -4..=6 {
        let (params, types) = hopf_family(n)?;
        println!(
            "n = {n:>2} {params}: {types}  almost free {}  disc {}",
            is_almost_free(&types),
            oliver_obstruction(&types)
        );
    }
    println!();
    for n in 0..3 {
        let m = mod56_family(2, n)?;
        println!(
            "k = {}: orders {:?}, types {}",
            m.shifted_k, m.orders, m.orbit_types
        );
    }
    Ok(())
}
