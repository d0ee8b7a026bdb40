//! Unit quaternions, the bracket on su(2)^n and the double cover S^3 -> SO(3).

use milnor_geom::quat_lie::{bracket, double_cover, Axis, LieAlgebraElement, Quaternion};

fn main() -> milnor_geom::Result<()> {
    let i = LieAlgebraElement::basis(1, 0, Axis::I);
    let j = LieAlgebraElement::basis(1, 0, Axis::J);
    println!("[i, j] = {:?}", bracket(&i, &j)?.coords());

    let q = Quaternion::exp_imag(Quaternion::K, std::f64::consts::FRAC_PI_4);
    println!("q = {q:?}");
    println!(
        "rotation of q (a quarter turn about k):\n{:.6}",
        double_cover(&q)?
    );
    println!(
        "-q gives the same rotation: {}",
        double_cover(&(q * -1.0))? == double_cover(&q)?
    );

    let x = LieAlgebraElement::basis(1, 0, Axis::I);
    println!("Ad_q i = {:?}", x.adjoint(&[q])?.coords());
    Ok(())
}
