use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(steinecc_cli::run(std::env::args_os()))
}
