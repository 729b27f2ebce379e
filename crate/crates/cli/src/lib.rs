//! Library side of the `tauberian` command-line tool.
//!
//! The binary in `main.rs` is a thin dispatcher; everything it prints or
//! writes is produced here so the integration tests can exercise report
//! assembly directly.

pub mod grid;
pub mod logging;
pub mod output;
pub mod verify;

/// Exit codes shared by every subcommand: 0 success, 1 verification or
/// internal failure, 2 usage error.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
}
