//! Runs every acceptance criterion and prints one line per criterion.
//! Numeric arguments restrict the run, e.g. `cargo test --test acceptance -- 1 11`.

use std::process::ExitCode;

fn main() -> ExitCode {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if cli::acceptance::run_suite(&only, &mut std::io::stdout()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
