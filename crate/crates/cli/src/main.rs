use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use specsym_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("specsym: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
