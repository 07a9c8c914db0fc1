use std::process::ExitCode;

fn main() -> ExitCode {
    hbknot::cli::main()
}
