use std::process::ExitCode;

use clap::Parser;
use crowdwise_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(msg) => {
            println!("{msg}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("crowdwise: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
