//! Cohomology of the bundles P_k, M_k, M_{k,l} and P_{k,l}.

use milnor_geom::bundle::{cohomology_report, CohomologyKind};

fn main() -> milnor_geom::Result<()> {
    let cases = [
        (CohomologyKind::PrincipalS3, 3, None),
        (CohomologyKind::S2Bundle, 0, None),
        (CohomologyKind::S2Bundle, 5, None),
        (CohomologyKind::S3Bundle, 2, Some(-1)),
        (CohomologyKind::PrincipalS3xS3, 2, Some(4)),
    ];
    for (kind, k, l) in cases {
        let r = cohomology_report(kind, k, l)?;
        let groups: Vec<String> = r.groups.iter().map(ToString::to_string).collect();
        println!("{kind} k = {k} l = {l:?}: {}", groups.join(", "));
        for n in &r.notes {
            println!("    {n}");
        }
    }
    Ok(())
}
