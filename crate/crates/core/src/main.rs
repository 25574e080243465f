use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match gcplus::cli::parse(std::env::args()) {
        Ok(c) => c,
        Err(gcplus::cli::CliError::Clap(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match gcplus::cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
