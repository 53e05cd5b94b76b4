use std::process::ExitCode;

use fine_arith::cli;

fn main() -> ExitCode {
    let code = std::panic::catch_unwind(|| cli::run(std::env::args_os()))
        .unwrap_or(cli::EXIT_INTERNAL);
    ExitCode::from(code as u8)
}
