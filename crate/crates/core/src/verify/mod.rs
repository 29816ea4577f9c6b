//! Verification harness: evaluates both sides of every stated inequality
//! over seeded corpora, applies explicit constants where derivable, and
//! keeps regression baselines for the non-explicit ones.

pub mod baseline;
pub mod corpus;
pub mod report;
pub mod suites;

pub use baseline::BaselineStore;
pub use corpus::{default_corpus, Corpus};
pub use report::{CheckRecord, VerificationReport};
pub use suites::{run_suite, suite_names};
