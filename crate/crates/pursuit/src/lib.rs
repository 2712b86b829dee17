//! Standard-library companion to `pursuit-core`: the arc-list file format,
//! DOT export, JSON views of solver output and the verification suites
//! behind the `pursuit` command line tool.

pub mod harness;
pub mod io;
pub mod report;

pub use harness::{ExperimentReport, InstanceRecord, Suite, SuiteConfig};
