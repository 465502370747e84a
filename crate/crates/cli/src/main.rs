use std::process::ExitCode;

use fluxbound_cli::{parse_args, run, CliError};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args_os()) {
        Ok(spec) => run(&spec),
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
