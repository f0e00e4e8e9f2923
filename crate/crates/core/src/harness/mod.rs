//! The user surface: chart manifests, form expressions, seeded corpora and
//! the verification suites with their reports.

pub mod corpus;
pub mod expr;
pub mod manifest;
pub mod report;
pub mod suites;

pub use corpus::Corpus;
pub use expr::parse_form_expr;
pub use manifest::{parse_manifest, render_manifest};
pub use report::{CheckRecord, Report, Status, Summary};
pub use suites::{run_suite, Context, Suite};
