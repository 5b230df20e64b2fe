mod args;
mod cache;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{normalize_args, Cli};
use crate::commands::{execute, CliError, Context};

fn main() -> ExitCode {
    let argv = normalize_args(std::env::args());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Context::from_cli(&cli, argv.join(" "));
    match execute(&cli.command, &ctx) {
        Ok(records) => {
            if let Err(e) = report::emit(&records, cli.json) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(u8::from(records.iter().any(|r| r.failed())))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Failed(_) => 1,
            })
        }
    }
}
