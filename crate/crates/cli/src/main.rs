use std::process::ExitCode;

use clap::Parser;
use fischer_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = report.to_json();
            match &cli.json {
                Some(path) => {
                    if let Err(source) = std::fs::write(path, &text) {
                        let e = CliError::Io {
                            path: path.display().to_string(),
                            source,
                        };
                        eprintln!("error: {e}");
                        return ExitCode::from(e.exit_code());
                    }
                    for r in &report.results {
                        println!("{:<22} {:<34} {}", r.command, r.subject, r.status);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
