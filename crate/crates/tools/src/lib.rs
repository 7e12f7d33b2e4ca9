//! File formats and report rendering behind the `gentle` command-line
//! tool. The library half exists so the formats and renderers can be
//! tested and reused; all command wiring lives in the binary.

pub mod formats;
pub mod report;
