//! Command implementations and file formats behind the `hyperlip` binary.
//!
//! Exposed as a library so the integration and acceptance test suites can
//! drive the exact code paths the binary runs.

pub mod commands;
pub mod config;
pub mod io;

/// Process exit code for domain errors (not hyperbolic, degenerate bound
/// inputs, failed hypotheses); I/O and parse problems exit with 1.
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 1;

/// Maps an error chain to the documented exit code: 2 when the root cause
/// is a domain error from the numeric core, 1 otherwise.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.downcast_ref::<hyperlip_core::Error>().is_some() {
            return EXIT_DOMAIN;
        }
    }
    EXIT_IO
}
