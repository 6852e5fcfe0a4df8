use std::process::ExitCode;

fn main() -> ExitCode {
    schottky_cli::app::run()
}
