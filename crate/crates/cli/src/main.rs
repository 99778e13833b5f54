//! `opalg` command-line front end.
//!
//! Every invocation prints one JSON report
//! `{"command", "args", "status", "payload"}` on stdout. Exit status is 0 for
//! `ok` and `absent`, 1 for `refuted` and 2 for `error`.

mod args;
mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use report::{Report, Status};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let report = run(&argv);
    print!("{}", opalg::json::to_pretty(&report.to_json()));
    ExitCode::from(report.status.exit_code())
}

fn run(argv: &[String]) -> Report {
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let name = echo.first().cloned();
            return Report::usage_error(name, echo, e.kind().to_string(), e.to_string());
        }
    };
    let name = cli.command.name().to_string();
    match commands::dispatch(&cli) {
        Ok(out) => {
            if let (Some(path), Status::Ok | Status::Absent | Status::Refuted) = (&cli.common.out, out.status) {
                let doc = serde_json::Value::Object(out.outputs.clone());
                if let Err(e) = std::fs::write(path, opalg::json::to_pretty(&doc)) {
                    return Report::failure(name, echo, "io", format!("cannot write {}: {e}", path.display()));
                }
            }
            Report::new(name, echo, out.status, out.payload)
        }
        Err(e) => Report::from_error(name, echo, e),
    }
}
