use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gradpi::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    if let Some(message) = report.error_message() {
        eprintln!("gradpi: {message}");
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(report.render(cli.json).as_bytes());
    let _ = stdout.flush();
    ExitCode::from(report.exit_code as u8)
}
