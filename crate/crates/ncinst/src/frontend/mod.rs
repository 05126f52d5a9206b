//! Command-line frontend: the expression language, verification suites and
//! machine-readable reports.

pub mod parser;
pub mod report;
pub mod suites;

pub use parser::{evaluate, parse, parse_element, Expr, ParseError};
pub use report::{CheckRecord, Report, Status};
pub use suites::{plan, run_suite, RunOptions, SuiteError, SUITES};
