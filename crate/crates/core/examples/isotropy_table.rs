//! The table of isotropy orders for the standard actions, and a few entries
//! evaluated.

use milnor_geom::isotropy::{isotropy_table, render_isotropy_table};

fn main() -> milnor_geom::Result<()> {
    print!("{}", render_isotropy_table());
    for (k, l) in [(4, 6), (2, -1), (3, -2), (1, 0)] {
        let entry = isotropy_table(k, l, 2)?;
        println!(
            "\nk = {k}, l = {l}: {} and {}",
            entry.formulas[0], entry.formulas[1]
        );
        for m in &entry.members {
            println!(
                "  {} {}{}",
                m.params,
                m.orbit_types,
                if m.almost_free {
                    ""
                } else {
                    "  not almost free"
                }
            );
        }
    }
    Ok(())
}
