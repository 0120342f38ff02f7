//! Front end for the constraint analysis engine: the bundled model corpus
//! and the serializable analysis report.

pub mod corpus;
pub mod report;

pub use corpus::{find, Descriptor, CORPUS};
pub use report::AnalysisReport;
