//! Group diagrams of the S^4 base and of the principal bundles, checked
//! for consistency and for freeness of the principal action.

use milnor_geom::isotropy::{check_principal_freeness, validate_diagram, GroupDiagram};

fn main() {
    let diagrams = [
        GroupDiagram::s4_base(),
        GroupDiagram::principal_s3(5, 1),
        GroupDiagram::principal_s3(-3, 1),
        GroupDiagram::principal_s3(3, 1),
        GroupDiagram::principal_s3xs3(5, -3, 1, 5),
    ];
    for d in &diagrams {
        let status = match validate_diagram(d) {
            Ok(()) => "valid".to_string(),
            Err(e) => format!("invalid: {e}"),
        };
        println!("{:?} {:?}: {status}", d.kind, d.params);
        println!("    H = {}, K- = {}, K+ = {}", d.h, d.k_minus, d.k_plus);
        println!(
            "    free: {}, end codimensions {:?}",
            check_principal_freeness(d),
            d.end_codimensions()
        );
    }
}
