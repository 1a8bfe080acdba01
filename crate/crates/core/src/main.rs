use std::process::ExitCode;

fn main() -> ExitCode {
    simplex_annotations::cli::main_with_args(std::env::args_os())
}
