use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rmrec_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Into::into));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // Output cut short by a closed pipe, e.g. `rmcode info ... | head`.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rmcode: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
