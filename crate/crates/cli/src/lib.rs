//! Command-line front end, JSON formats and timed verification suites for
//! `qlag-core`.

pub mod cli;
pub mod formats;
pub mod verify;

pub use cli::run;
