//! Minimum sectional curvature of Q_a on su(2) ⊕ su(2) with k the diagonal,
//! for a few values of a. Shrinking (a <= 1) stays nonnegative; any a > 1
//! produces a negative plane.

use milnor_geom::cheeger::{find_negative_plane, sampled_minimum, DeformedMetric};
use milnor_geom::quat_lie::ReductiveSplit;

fn main() -> milnor_geom::Result<()> {
    for a in [0.5, 1.0, 1.05, 1.5] {
        let metric = DeformedMetric::new(ReductiveSplit::diagonal(2)?, a)?;
        let sampled = sampled_minimum(&metric, 20_000, 1);
        let search = find_negative_plane(&metric, 100_000, 1);
        match search.witness {
            Some(w) => println!(
                "a = {a:<5} sampled min {:>10.3e}  negative plane {:.6e} (oracle {:.6e})",
                sampled.min, w.value, w.oracle_value
            ),
            None => println!(
                "a = {a:<5} sampled min {:>10.3e}  none found (best {:.3e})",
                sampled.min, search.best_value
            ),
        }
    }
    Ok(())
}
