//! Library side of the `howe3` command-line tool: report schemas, table
//! renderers, command execution, and the acceptance-criteria runners shared
//! between `howe3 selftest` and the integration test suite.

pub mod accept;
pub mod render;
pub mod report;
pub mod run;

/// Exit status contract: 0 success, 1 domain (input) errors, 2 internal
/// invariant violations.
pub fn exit_code(err: &howe_core::Error) -> i32 {
    match err {
        howe_core::Error::Domain(_) => 1,
        howe_core::Error::Internal(_) => 2,
    }
}
