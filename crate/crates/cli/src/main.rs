use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use pcurv_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (report, human, code) = match run(&cli.command) {
        Ok((report, human)) => (report, human, 0),
        Err((report, err)) => (report, format!("error: {}", err.message()), err.exit_code()),
    };
    if code == 0 {
        println!("{human}");
        println!("({} ms)", started.elapsed().as_millis());
    } else {
        eprintln!("{human}");
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json_string() + "\n") {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code as u8)
}
