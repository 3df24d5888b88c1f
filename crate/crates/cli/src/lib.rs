//! Command line, file formats and the validation suite for `diracpt-core`.
//!
//! The binary is a thin wrapper over [`run`], which takes the argument list
//! and output streams so it can be driven from tests.

pub mod checks;
pub mod cli;
pub mod commands;
pub mod format;
pub mod reference;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::cli::{Cli, Command};
use crate::commands::{CliError, Emitted};

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((emitted, path)) => {
            for note in &emitted.notes {
                let _ = writeln!(stderr, "{note}");
            }
            let written = match path {
                Some(path) => std::fs::write(path, emitted.text.as_bytes()),
                None => stdout
                    .write_all(emitted.text.as_bytes())
                    .and_then(|()| stdout.flush()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: i/o: {e}");
                return 1;
            }
            i32::from(!emitted.success)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command) -> Result<(Emitted, Option<&std::path::Path>), CliError> {
    Ok(match command {
        Command::Spectrum(a) => (commands::spectrum(a)?, a.output.out.as_deref()),
        Command::Wavefunction(a) => (commands::wavefunction(a)?, a.output.out.as_deref()),
        Command::Table1(a) => (commands::table1_report(a)?, a.out.as_deref()),
        Command::Validate(a) => (commands::validate(a)?, None),
    })
}
