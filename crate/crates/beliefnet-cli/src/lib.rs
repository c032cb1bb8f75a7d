//! Command-line front end over the `beliefnet` library. Every command
//! prints a `# key: value` header carrying its fully resolved settings,
//! defaults included, so any output file is enough to rerun it.
//!
//! Exit status: 0 on success, 1 when a check fails (an axiom does not
//! hold, a constructed schedule does not reach an equilibrium), 2 for
//! usage and input problems.

pub mod args;
pub mod commands;
pub mod header;
pub mod io;
pub mod trace_io;

use clap::Parser;

use args::{Cli, Command};
use commands::CmdResult;

pub fn run_cli() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap prints help/version to stdout with status 0 and usage
        // errors to stderr with status 2.
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => commands::verify::run(a),
        Command::Simulate(a) => commands::simulate::run(a),
        Command::Analyze(a) => commands::analyze::run(a),
        Command::ConstructSequence(a) => commands::sequence::run(a),
        Command::Sweep(a) => commands::sweep::run(a),
    };
    match result {
        Ok(CmdResult { stdout, exit }) => {
            print!("{stdout}");
            exit
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
