//! `kum3-verify`: runs the verification suites and emits reports.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on a
//! configuration, output or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kum3_core::config::{load_config, Config};
use kum3_core::report::{emit_report, Format};
use kum3_core::suites::{run_suite, SuiteName};

#[derive(Debug, Parser)]
#[command(
    name = "kum3-verify",
    version,
    about = "Exact verification suites for Kum3 intersection numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a suite and emit its report.
    Verify {
        /// Suite name, see `list-suites`.
        suite: SuiteName,
        /// Configuration file; the bundled defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report format: json or markdown.
        #[arg(long, default_value = "json")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the available suites.
    ListSuites,
    /// Print the validated configuration as JSON.
    ShowConfig {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

const USAGE_ERROR: u8 = 2;

fn config(path: Option<PathBuf>) -> Result<Config, String> {
    match path {
        Some(p) => load_config(&p).map_err(|e| e.to_string()),
        None => Ok(Config::bundled()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify {
            suite,
            config: path,
            format,
            out,
        } => {
            let cfg = config(path)?;
            let report = run_suite(suite, &cfg);
            let text = emit_report(&report, format);
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(if report.failed() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::ListSuites => {
            for s in SuiteName::ALL {
                println!("{:<14} {}", s.as_str(), s.description());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ShowConfig { config: path } => {
            let cfg = config(path)?;
            let text = serde_json::to_string_pretty(&cfg.document).map_err(|e| e.to_string())?;
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
