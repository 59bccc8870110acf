//! Command-line front end for `core-moments`.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical mismatch,
//! 2 on a usage error and 3 when a brute-force work budget is exceeded.

pub mod commands;
pub mod report;
