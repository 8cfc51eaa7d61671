//! File formats, verification suites and reports on top of `monocat-core`.

pub mod config;
pub mod formats;
pub mod report;
pub mod suites;

pub use config::RunConfig;
pub use report::{Claim, Report, Status};
pub use suites::{run_enumerate, run_suite, Context, ObjectClass, Suite};
