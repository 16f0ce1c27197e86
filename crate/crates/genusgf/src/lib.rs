//! File formats, result cache, parallel oracle driver and reports for the
//! `genusgf` command-line tool. The mathematics lives in `genusgf-core`.

pub mod bench;
pub mod cache;
mod error;
pub mod format;
pub mod parallel;
pub mod verify;

pub use error::{CliError, CliResult};
