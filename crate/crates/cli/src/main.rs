mod args;
mod commands;
mod config;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::config::{expand_config, UsageError};

const USAGE: u8 = 1;
const DATA: u8 = 2;

fn run(argv: Vec<OsString>) -> u8 {
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return if e.is::<UsageError>() { USAGE } else { DATA };
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => USAGE,
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                USAGE
            } else {
                DATA
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os().collect()))
}
