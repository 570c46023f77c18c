//! Library surface of the CLI, split out so the command logic and file
//! formats are testable without spawning the binary.

pub mod commands;
pub mod error;
pub mod formats;
pub mod ledger;
pub mod report;
