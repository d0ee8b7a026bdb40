//! Regenerates the embedded reference values through the command-line
//! front end and prints the comparison.

use milnor_geom::cli;

fn main() {
    let result = cli::run(["milnor", "repro", "all"]);
    print!("{}", result.render());
    std::process::exit(result.exit);
}
