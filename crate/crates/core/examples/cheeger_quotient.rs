//! The metric induced on G/H from G × K/H with λ Q on the fibre: unchanged
//! on m, scaled by λ/(λ+1) on p. Checked exactly and against the numerical
//! horizontal space.

use milnor_geom::cheeger::{cheeger_quotient_factors, compensating_scale, horizontal_lift_check};
use milnor_geom::quat_lie::{Axis, LieAlgebraElement, ReductiveSplit};
use num_rational::Ratio;

fn main() -> milnor_geom::Result<()> {
    for lambda in [
        Ratio::new(1i64, 2),
        Ratio::from_integer(3),
        Ratio::from_integer(1000),
    ] {
        let (m, p) = cheeger_quotient_factors(lambda)?;
        println!(
            "λ = {lambda}: factors ({m}, {p}), compensating scale {}",
            compensating_scale(lambda)?
        );
    }

    let split = ReductiveSplit::circle(1, 0)?;
    let samples = [
        LieAlgebraElement::basis(1, 0, Axis::I),
        LieAlgebraElement::basis(1, 0, Axis::J),
    ];
    let report = horizontal_lift_check(&split, 3.0, &samples)?;
    println!("{report:#?}");
    Ok(())
}
