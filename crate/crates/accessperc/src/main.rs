use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(accessperc::cli::main_with_args(std::env::args_os()))
}
