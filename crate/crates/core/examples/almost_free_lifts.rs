//! Almost free SO(3) actions on the S^3 bundle with classes (k, l) that
//! preserve the bundle structure.

use milnor_geom::isotropy::find_almost_free_lift;

fn main() -> milnor_geom::Result<()> {
    for (k, l) in [(3, -2), (2, -1), (6, -5), (4, -4), (1, 0)] {
        let bound = (k == 0 || l == 0).then_some(21);
        let lifts = find_almost_free_lift(k, l, bound)?;
        println!("({k}, {l}): {} almost free", lifts.len());
        for lift in lifts.iter().take(4) {
            println!("    {lift}");
        }
    }
    Ok(())
}
