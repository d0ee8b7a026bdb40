use std::io::Write;

fn main() {
    let result = milnor_geom::cli::run(std::env::args_os());
    let text = result.render();
    if result.is_error() && !result.json {
        let _ = std::io::stderr().write_all(text.as_bytes());
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    std::process::exit(result.exit);
}
