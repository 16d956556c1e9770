//! The `globcat` command-line tool as a library: argument definitions, the
//! dispatcher, and the mapping from outcomes to exit codes.
//!
//! Exit codes: 0 success, 2 unparseable input or flags, 3 a domain
//! violation (the report is printed), 4 a depth beyond what is supported.

pub mod cli;
pub mod error;
pub mod run;

use std::ffi::OsString;

use clap::Parser;

pub use cli::RunConfig;
pub use error::CliError;
pub use run::{run, FIXTURE_DIR_VAR};

/// Exit status and the text for standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Parses arguments (without the program name) and runs the command. Flag
/// errors give exit code 2 with clap's message.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("globcat")).chain(args.into_iter().map(Into::into));
    match RunConfig::try_parse_from(argv) {
        Ok(cfg) => execute(&cfg),
        Err(e) => Outcome {
            code: if e.use_stderr() { 2 } else { 0 },
            stdout: e.to_string(),
        },
    }
}

/// Runs a parsed configuration. With `--output` the JSON goes to that file
/// and standard output stays empty.
pub fn execute(cfg: &RunConfig) -> Outcome {
    let (code, value) = match run(cfg) {
        Ok(v) => (0, v),
        Err(e) => (e.exit_code(), e.report()),
    };
    let mut text = serde_json::to_string(&value).expect("JSON values serialize");
    text.push('\n');
    if let Some(path) = &cfg.output {
        if let Err(e) = std::fs::write(path, &text) {
            let err = CliError::Parse(format!("{}: {e}", path.display()));
            return Outcome {
                code: err.exit_code(),
                stdout: format!("{}\n", err.report()),
            };
        }
        text.clear();
    }
    Outcome { code, stdout: text }
}
