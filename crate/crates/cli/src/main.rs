use std::process::ExitCode;

use disperse_cli::{parse_args, run, thread_cap, Outcome, THREADS_ENV};

fn main() -> ExitCode {
    let config = parse_args(std::env::args_os()).unwrap_or_else(|e| e.exit());
    let threads = match thread_cap(std::env::var(THREADS_ENV).ok().as_deref()) {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&config, threads) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ValidationFailed) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {}: {e}", config.command.name());
            ExitCode::FAILURE
        }
    }
}
