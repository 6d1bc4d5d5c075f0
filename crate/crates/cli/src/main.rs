use std::process::ExitCode;

fn main() -> ExitCode {
    robsub_cli::main_with(std::env::args_os())
}
