use std::process::ExitCode;

use clap::Parser;
use ruledgw::cli::{run, Cli};

fn main() -> ExitCode {
    let env = env_logger::Env::new().filter_or("LOG_LEVEL", "warn");
    env_logger::Builder::from_env(env).init();

    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(response) => {
            println!("{}", response.render());
            ExitCode::from(response.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
