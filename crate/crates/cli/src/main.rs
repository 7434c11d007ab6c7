use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = mvbandit_cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match mvbandit_cli::run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
