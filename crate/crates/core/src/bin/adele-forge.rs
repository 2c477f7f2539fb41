use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use adele_forge::run::{run_text, selfcheck_outcome, RunOptions, RunOutcome, EXIT_DOMAIN, EXIT_SCHEMA};

#[derive(Parser)]
#[command(name = "adele-forge", version, about = "Exact adelic computations over finite fields")]
struct Cli {
    /// Seed for randomized fixtures and factorization splitting.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest extension degree searched for intersection points.
    #[arg(long = "ext-bound", global = true)]
    ext_bound: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the task described by a JSON config.
    Run { config: PathBuf },
    /// Run the full invariant suite and the sign audit.
    Selfcheck {
        /// Emit the JSON report instead of a summary.
        #[arg(long)]
        json: bool,
    },
}

fn summary(outcome: &RunOutcome) -> String {
    let r = &outcome.report["result"];
    let mut out = String::new();
    if let Some(checks) = r["checks"].as_array() {
        for c in checks {
            let mark = if c["passed"] == true { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{mark} {:<22} {} ({})\n",
                c["module"].as_str().unwrap_or(""),
                c["name"].as_str().unwrap_or(""),
                c["detail"].as_str().unwrap_or("")
            ));
        }
    }
    match r["audit"]["resolved"].as_object() {
        Some(s) => out.push_str(&format!("ok   sign audit: {}\n", serde_json::Value::Object(s.clone()))),
        None => out.push_str(&format!("FAIL sign audit: {}\n", r["audit_error"].as_str().unwrap_or("?"))),
    }
    out.push_str(&format!("{} passed, {} failed\n", r["passed"], r["failed"]));
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_SCHEMA as u8 } else { 0 });
        }
    };
    let opts = RunOptions { seed: cli.seed, ext_bound: cli.ext_bound, ..RunOptions::default() };
    let (outcome, text) = match &cli.command {
        Command::Run { config } => {
            let text = match std::fs::read_to_string(config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", config.display());
                    return ExitCode::from(EXIT_DOMAIN as u8);
                }
            };
            let outcome = run_text(&text, &opts);
            let json = outcome.to_json();
            (outcome, json)
        }
        Command::Selfcheck { json } => {
            let outcome = selfcheck_outcome(&opts);
            let text = if *json { outcome.to_json() } else { summary(&outcome) };
            (outcome, text)
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_DOMAIN as u8);
            }
        }
        None => print!("{text}"),
    }
    if let Some(msg) = outcome.report["error"]["message"].as_str() {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
