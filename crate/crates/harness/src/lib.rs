//! Experiment driver for the `aded` optimizer: presets, seeded batches,
//! the strategy tournament, multi-objective scoring and report output.

pub mod cli;
pub mod error;
pub mod exec;
pub mod plan;
pub mod report;
