//! File formats, the benchmark harness and the command line on top of
//! `adaptivity-core`.

pub mod bench;
pub mod cli;
pub mod io;
