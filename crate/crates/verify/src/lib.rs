//! Verification suites over the combinatorics of `2V` and `3V`: exhaustive
//! scans of small patterns, seeded random campaigns and regression fixtures.

pub mod fixtures;
pub mod gen;
pub mod report;

pub use report::{Failure, Recorder, SuiteOptions, SuiteReport};
pub mod suites;

pub use suites::{run_suite, VerifyError, SUITES};
