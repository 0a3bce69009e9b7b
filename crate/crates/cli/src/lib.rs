//! Command-line front end for the MAVShield toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or verification error.

pub mod bench;
mod commands;

pub use commands::{run, Cli};
