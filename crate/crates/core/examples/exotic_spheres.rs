//! The Z_28 class of the homotopy sphere with bundle classes (k, 1-k), the
//! values that occur, and which k give oriented diffeomorphic spheres.

use milnor_geom::classify::{
    diffeo_equiv, eells_kuiper, euler_m, realized_folded, realized_values,
};

fn main() {
    for k in [2i64, 3, 4, 5, -1, 58] {
        let e = euler_m(k, 1 - k);
        let c = eells_kuiper(k);
        println!(
            "k = {k:>3}: euler {} ({}), class {:>2}, up to orientation {:>2}, {}",
            e.euler,
            if e.homotopy_sphere {
                "sphere"
            } else {
                "not a sphere"
            },
            c.value,
            c.orientation_folded,
            c.label()
        );
    }
    println!("realized: {:?}", realized_values());
    println!("up to orientation: {:?}", realized_folded());
    let partners: Vec<i64> = (0..56).filter(|&m| m != 2 && diffeo_equiv(2, m)).collect();
    println!("same sphere as k = 2 in 0..56: {partners:?}");
}
