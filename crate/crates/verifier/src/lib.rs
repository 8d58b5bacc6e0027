//! Scenario fixtures, lemma checks and the `cremona` command line.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod registry;
pub mod report;
pub mod schema;

pub use error::{Result, VerifierError};
pub use fixtures::{Fixtures, Scenario};
pub use report::{Check, Report, Verdict};
