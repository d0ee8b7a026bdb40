//! Isotropy types of the SO(3) action on M_{k,l} given by four slopes.

use milnor_geom::bundle::{classify_pair, ActionParams};
use milnor_geom::isotropy::{dihedral_orders, is_almost_free, oliver_obstruction, orbit_types};

fn main() -> milnor_geom::Result<()> {
    for t in [
        (5, -3, 1, 5),
        (-7, 5, 5, -3),
        (5, 5, 1, -3),
        (-3, 17, 1, 17),
    ] {
        let params = ActionParams::new(t.0, t.1, t.2, t.3)?;
        let types = orbit_types(&params)?;
        println!(
            "{params}: classes {:?}, dihedral orders {:?}, types {types}, almost free {}, disc {}",
            classify_pair(&params)?,
            dihedral_orders(&params)?,
            is_almost_free(&types),
            oliver_obstruction(&types)
        );
    }
    Ok(())
}
