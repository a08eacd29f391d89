use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;

fn main() -> ExitCode {
    match unimod_cli::run(std::env::args_os()) {
        Ok(inv) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(inv.render().as_bytes());
            ExitCode::from(inv.exit_code() as u8)
        }
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(unimod_cli::commands::EXIT_INPUT as u8),
            }
        }
    }
}
