//! Command-line front end for `sring-core`: ring-definition files in,
//! deterministic JSON reports out.

pub mod args;
mod commands;
pub mod input;
pub mod manifest;

use std::fmt;

pub use args::{Cli, Command, Property};
pub use commands::run;
pub use input::{parse_ring_file, parse_ring_str, InputError, LoadedInput};
pub use manifest::RunManifest;

pub const EXIT_OK: i32 = 0;
/// Some statement was violated.
pub const EXIT_VIOLATED: i32 = 1;
/// Bad arguments or a malformed input file.
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ZERO_IN_CLOSURE: i32 = 3;
pub const EXIT_SIZE_CAP: i32 = 4;
/// Ideal-count cap, search budget or degree bound.
pub const EXIT_OTHER_CAP: i32 = 5;
/// The ring has no S-prime ideal.
pub const EXIT_EMPTY_SPECTRUM: i32 = 6;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(e: impl fmt::Display) -> Self {
        Self::usage(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn exit_code(e: &sring_core::Error) -> i32 {
    use sring_core::Error::*;
    match e {
        ZeroInClosure => EXIT_ZERO_IN_CLOSURE,
        SizeCapExceeded { .. } => EXIT_SIZE_CAP,
        IdealCapExceeded { .. } | ExhaustiveInfeasible { .. } | DegreeOverflow { .. } => {
            EXIT_OTHER_CAP
        }
        EmptySpectrum => EXIT_EMPTY_SPECTRUM,
        InvalidModulus(_)
        | EmptyProduct
        | MalformedLiteral { .. }
        | ZeroRing
        | ElementOutOfRange { .. }
        | NonCommutative(_)
        | Parse(_) => EXIT_USAGE,
    }
}

impl From<sring_core::Error> for CliError {
    fn from(e: sring_core::Error) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}
