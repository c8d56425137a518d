use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ecompat::cli::{run_verify, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "ecompat", version, about = "Exact checks for Lie algebroids and compatible E-n-forms")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a manifest, or every *.json manifest in a directory.
    Verify {
        path: PathBuf,
        /// Check to run (repeatable); `all` runs every check.
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Omit timing so that reports are byte-identical across runs.
        #[arg(long)]
        stable: bool,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let Command::Verify {
        path,
        checks,
        seed,
        stable,
        json,
        text,
    } = args.command;
    match run_verify(&path, &checks, seed, stable) {
        Ok(report) => {
            if text && !json {
                print!("{}", report.to_text());
            } else {
                print!("{}", report.to_json());
            }
            ExitCode::from(if report.all_passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
