//! Standard-library companion to `cubesum-core`: JSON formats, the parallel
//! grid scanner and the `cubesum` command-line tool.

pub mod cli;
pub mod json;
pub mod scan;

pub use scan::{scan_grid, GridRange, ScanOptions, ScanRecord, ScanSummary};
