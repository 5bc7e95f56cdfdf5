//! File formats, configuration and run modes for the `dphls` command.

pub mod app;
pub mod batch;
pub mod config;
pub mod fasta;
pub mod input;
pub mod matrix;
pub mod report;
pub mod signal;
pub mod tiling;
