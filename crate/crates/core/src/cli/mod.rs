//! The `spinpair` command-line front end.
//!
//! Exit status: 0 success, 1 usage error, 2 verification failure,
//! 3 internal-consistency error.

pub mod args;
pub mod config;
pub mod output;
pub mod run;

use args::Cli;
use clap::error::ErrorKind;
use clap::Parser;
use config::{RawConfig, RunConfig, UsageError};
use std::ffi::OsString;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Parse argv (including the program name) and an optional config file into
/// a validated configuration.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ParseOutcome::Clap)?;
    let (flags, path, fault) = cli.into_parts().map_err(ParseOutcome::Usage)?;
    let file = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| ParseOutcome::Usage(UsageError::new("config", format!("{}: {e}", p.display()))))?;
            RawConfig::from_json(&text).map_err(ParseOutcome::Usage)?
        }
        None => RawConfig::default(),
    };
    flags.over(file).resolve(fault).map_err(ParseOutcome::Usage)
}

#[derive(Debug)]
pub enum ParseOutcome {
    /// Includes `--help` and `--version`, which are not failures.
    Clap(clap::Error),
    Usage(UsageError),
}

/// Run the tool end to end and return the exit status.
pub fn main_with<I, T>(argv: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(ParseOutcome::Clap(e)) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(stdout, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{rendered}");
            return EXIT_USAGE;
        }
        Err(ParseOutcome::Usage(e)) => {
            let _ = writeln!(stderr, "error: invalid input `{}`: {}", e.field, e.message);
            return EXIT_USAGE;
        }
    };

    match run::run(&config) {
        Ok(out) => {
            if let Err(e) = output::write_records(&out.records, config.output_format, stdout) {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return EXIT_INTERNAL;
            }
            for line in &out.summary {
                let _ = writeln!(stderr, "{line}");
            }
            match out.status {
                run::Status::Success => EXIT_OK,
                run::Status::VerificationFailed => EXIT_VERIFY_FAILED,
            }
        }
        Err(e) => {
            let kind = if e.is_internal() { "internal" } else { "input" };
            let diagnostic = serde_json::json!({ "command": config.command.name(), "error": kind, "message": e.to_string() });
            let _ = writeln!(stderr, "{diagnostic}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_USAGE
            }
        }
    }
}
