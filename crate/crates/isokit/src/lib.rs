//! File formats, command-line dispatch and a benchmark harness for
//! `isokit-core`.

pub mod bench;
pub mod cli;
pub mod formats;
