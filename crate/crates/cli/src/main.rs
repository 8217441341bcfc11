use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use certgamma_cli::{exit_code, render, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let records = run(&cli);
    let text = render(&records, cli.format);
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(exit_code(&records) as u8)
}
