use std::process::ExitCode;

fn main() -> ExitCode {
    logbehave::cli::main_with_args(std::env::args_os())
}
