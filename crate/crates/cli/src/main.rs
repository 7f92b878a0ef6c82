use std::io::Write;
use std::process::ExitCode;

use bohrcheck::{run, Cli, EXIT_INPUT_ERROR};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.render(cli.global.format).as_bytes()).is_err() {
                return ExitCode::from(EXIT_INPUT_ERROR);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
