use std::process::ExitCode;

fn main() -> ExitCode {
    tduality_cli::main_exit()
}
