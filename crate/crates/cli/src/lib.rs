//! Front end for `folia-core`: an expression parser for polynomials, one-forms
//! and foliation specs, a command dispatcher, and deterministic text reports.

pub mod input;
pub mod parse;
pub mod report;
pub mod run;

pub use report::Report;
pub use run::{run, Command, Invocation, Outcome, Status, Theorem};
