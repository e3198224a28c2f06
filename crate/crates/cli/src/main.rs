use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pebblelab_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match pebblelab_cli::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
