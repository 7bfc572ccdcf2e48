//! Command-line front end: conditions, integral search, verification
//! suites and the golden corpus.

pub mod commands;
pub mod engine;
pub mod error;
pub mod golden;
pub mod render;
pub mod suite;

pub use commands::run;
