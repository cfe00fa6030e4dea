//! Text and JSON formats, the parallel oracle, the verify suite and the CLI
//! for `subfield-core`.

pub mod checks;
pub mod cli;
pub mod format;
pub mod json;
pub mod parallel;

pub use format::FieldSpec;
