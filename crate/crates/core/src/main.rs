// SPDX-License-Identifier: MIT OR Apache-2.0

use std::io::Write;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Parser, Subcommand};
use grading_forge::cli::{self, load_input};
use grading_forge::restriction::MAX_SPECTRUM;
use grading_forge::{Error, Result};
use serde_json::Value;

/// Gradings of reduced orders given by structure constants.
///
/// INPUT is a JSON algebra file, a grading file (for `validate`), or
/// `corpus:<name>` for a bundled example.
#[derive(Parser, Debug)]
#[command(name = "grading-forge", version)]
struct Cli {
    /// Abort with exit code 3 after this many seconds.
    #[arg(long, global = true)]
    timeout: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an algebra or grading file.
    Validate { input: String },
    /// Number field factors of the rational span.
    Spectrum { input: String },
    /// All Z/p^k-gradings.
    Cyclic {
        input: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Universal abelian group grading of an order.
    UniversalAbelian { input: String },
    /// Universal grid grading of an order, with the presentation of its
    /// groupification.
    UniversalGrid {
        input: String,
        #[arg(long, default_value_t = MAX_SPECTRUM)]
        max_spec: usize,
    },
    /// Counts of Z/p^k-gradings of Q(μ_{p^k}) for k = 1..=max-power.
    Census {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        max_power: u32,
    },
    /// List the bundled examples, or print one as an algebra file.
    Corpus { name: Option<String> },
}

fn command_line() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn run(command: Command) -> Result<Value> {
    let line = command_line();
    match command {
        Command::Validate { input } => cli::cmd_validate(&load_input(&input)?),
        Command::Spectrum { input } => cli::cmd_spectrum(&load_input(&input)?),
        Command::Cyclic { input, prime, power } => cli::cmd_cyclic(&load_input(&input)?, prime, power, &line),
        Command::UniversalAbelian { input } => cli::cmd_universal_abelian(&load_input(&input)?, &line),
        Command::UniversalGrid { input, max_spec } => cli::cmd_universal_grid(&load_input(&input)?, max_spec, &line),
        Command::Census { prime, max_power } => cli::cmd_census(prime, max_power),
        Command::Corpus { name } => cli::cmd_corpus(name.as_deref()),
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("GRADING_FORGE_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("warning: could not size the thread pool: {}", e);
            }
        }
        _ => eprintln!("warning: ignoring GRADING_FORGE_THREADS={:?}", v),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    configure_threads();

    let result = match cli.timeout {
        None => run(cli.command),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            let command = cli.command;
            std::thread::spawn(move || {
                let _ = tx.send(run(command));
            });
            rx.recv_timeout(Duration::from_secs(secs))
                .unwrap_or_else(|_| Err(Error::ResourceCap(format!("timed out after {} s", secs))))
        }
    };
    match result {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("serializable");
            // a closed pipe (`| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
