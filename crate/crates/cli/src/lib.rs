//! Command-line front end for `orbwidth`: configuration, commands, output
//! formats and the reference check suites.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use orbwidth::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Parse(_) | Error::InvalidArgument(_) | Error::Io(_) | Error::NotPrimePower(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}
