use std::process::ExitCode;

use adaptivity::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("adaptivity: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
