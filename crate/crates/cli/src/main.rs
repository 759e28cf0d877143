use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use stcalc::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if config.print_config {
        let text = serde_json::to_string_pretty(&config).expect("config serializes");
        let _ = writeln!(out, "{text}");
        return ExitCode::SUCCESS;
    }
    match run(&config) {
        Ok(result) => {
            match result.output.write(config.format, &mut out) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                _ => {}
            }
            if result.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
