use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use braidw::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(outcome) => {
            let _ = stdout.flush();
            ExitCode::from(outcome.code())
        }
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
