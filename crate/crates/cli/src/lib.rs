//! File formats and the solution verifier behind the `bordermin` binary.

pub mod format;
pub mod verify;

pub use format::{
    parse_instance, parse_solution, write_instance, write_solution, FormatError, InstanceFile, SolutionFile,
};
pub use verify::{verify, VerifyReport};
