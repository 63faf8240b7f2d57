//! Text formats, JSON reports and the `ht` command line for `ht-core`.
//!
//! Formats: definition files (`.defs`), proof scripts (`.ht`), logic
//! configs (`.cfg`) and truth universes (`.truth`).

pub mod cli;
pub mod config;
pub mod defs;
mod error;
pub mod report;
pub mod script;
pub mod universe;

use std::path::PathBuf;

pub use error::{FormatError, LoadError};

/// Bundled examples: `$HT_EXAMPLES_DIR` if set, else this crate's
/// `examples/`.
pub fn examples_dir() -> PathBuf {
    match std::env::var_os("HT_EXAMPLES_DIR") {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples"),
    }
}
