//! Structure files and example generators.

pub mod format;
pub mod generators;

pub use format::{parse, serialize, Structure};
