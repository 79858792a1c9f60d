//! Verification suites and command-line plumbing for `qfold`.

pub mod identities;
pub mod report;
pub mod suites;
