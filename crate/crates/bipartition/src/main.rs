use std::process::ExitCode;

fn main() -> ExitCode {
    bipartition::cli::run_cli()
}
