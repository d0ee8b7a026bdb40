//! An explicit negatively curved plane for a > 1: with k the diagonal of
//! su(2) ⊕ su(2), take A = a(i, -i), B = -a(j, -j), X = (i, i), Y = (j, j).
//! Then [A, B] = -a^2 [X, Y] and [X, B] + [A, Y] = 0, and only the last two
//! terms of the curvature formula survive.

use milnor_geom::cheeger::{DeformedMetric, KoszulOracle};
use milnor_geom::quat_lie::{LieAlgebraElement, ReductiveSplit};

fn el(c: [f64; 6]) -> LieAlgebraElement {
    LieAlgebraElement::from_coords(c.to_vec()).expect("six coordinates")
}

fn main() -> milnor_geom::Result<()> {
    for a in [1.01, 1.1, 4.0 / 3.0, 2.0] {
        let am = el([a, 0.0, 0.0, -a, 0.0, 0.0]);
        let bm = el([0.0, -a, 0.0, 0.0, a, 0.0]);
        let xk = el([1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let yk = el([0.0, 1.0, 0.0, 0.0, 1.0, 0.0]);
        let metric = DeformedMetric::new(ReductiveSplit::diagonal(2)?, a)?;
        let closed = metric.curvature_components(&am, &xk, &bm, &yk)?;
        let oracle = KoszulOracle::new(&metric).curvature(&(&am + &xk), &(&bm + &yk))?;
        let sec = metric.sectional_curvature(&(&am + &xk), &(&bm + &yk))?;
        println!("a = {a:.4}: R = {closed:.8} (oracle {oracle:.8}), sectional {sec:.4e}");
    }
    Ok(())
}
