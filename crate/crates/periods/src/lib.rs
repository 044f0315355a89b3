//! File formats, generators, verification suites and the command-line
//! driver around `periods-core`.

pub mod cli;
pub mod format;
pub mod generate;
pub mod json;
pub mod suites;

pub use cli::{run, run_args, Cli};
pub use format::{parse, serialize, FormatError, GraphDoc};
pub use generate::{generate, Family, WeightSpec};
