//! File formats and command surface for the `schottky` binary: single-file
//! JSON in, a single JSON report out, exit codes classifying failures.

pub mod app;
pub mod error;
pub mod json;
