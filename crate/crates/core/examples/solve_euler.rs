//! All slope pairs of the principal S^3 bundles over S^4 with a given Euler
//! class (default 105).

use milnor_geom::bundle::{canonical_solution, mv_matrix, solve_euler};

fn main() -> milnor_geom::Result<()> {
    let k: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("an integer"))
        .unwrap_or(105);
    // k = 0 is the infinite family p_- = p_+, cut off at |p_-| <= 50
    let solutions = solve_euler(k, (k == 0).then_some(50))?;
    println!("{} solutions for k = {k}", solutions.len());
    for p in &solutions {
        let mv = mv_matrix(p)?;
        println!(
            "  ({:>5}, {:>5})  det {:>8}",
            p.p_minus, p.p_plus, mv.determinant
        );
    }
    println!("canonical choice: {:?}", canonical_solution(k)?);
    Ok(())
}
