//! Command-line front end for the `unsharp` library.
//!
//! Every subcommand reads one JSON document and writes either pretty JSON or
//! a CSV table. Exit codes: 0 on success, 2 for input errors, 3 when the
//! oracle fails to converge.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod format;

use std::io::Read;
use std::path::Path;

pub use commands::{run, Command, Format};
pub use error::CliError;

/// Resolves `--input`: `-` reads stdin, text starting with `{` or `[` is
/// inline JSON, anything else is a file path.
pub fn read_input(spec: &str) -> Result<String, CliError> {
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(spec.to_string());
    }
    std::fs::read_to_string(Path::new(spec)).map_err(|e| CliError::Input(format!("{spec}: {e}")))
}
