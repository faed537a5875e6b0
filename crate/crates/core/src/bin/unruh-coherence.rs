use std::io;
use std::process::ExitCode;

use unruh_coherence::cli::{parse_args, run_command, CliError};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args_os().skip(1)) {
        Ok(cmd) => run_command(&cmd, &mut io::stdout().lock(), &mut io::stderr().lock()),
        Err(e) => {
            match &e {
                CliError::Info(msg) => print!("{msg}"),
                _ => eprintln!("{e}"),
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
