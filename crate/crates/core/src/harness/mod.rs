//! Graph input, exhaustive enumeration, verification suites, reports and a
//! result cache, shared by the command-line tool and the acceptance tests.

pub mod cache;
pub mod enumerate;
pub mod parse;
pub mod report;
pub mod suites;

pub use cache::ResultCache;
pub use enumerate::{enumerate_graphs, enumerate_up_to, GraphFilter};
pub use parse::{parse_graph, to_graph6};
pub use report::{InstanceRecord, Status, VerificationReport};
pub use suites::{curated_family, run_suite, run_suite_on, Suite, SuiteConfig};
