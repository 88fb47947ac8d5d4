use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(nilblock::cli::run(std::env::args_os()))
}
