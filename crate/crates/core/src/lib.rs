//! Exact q-series verification toolkit.
//!
//! - [`series`]: truncated power series in `q^{1/D}` over the integers.
//! - [`qprod`]: q-shifted factorials and product terms.
//! - [`bailey`]: Bailey pairs, the Bailey lemma and pair constructions.
//! - [`catalog`]: the registered identities and their verification.
//! - [`report`]: verification reports and their JSON shape.

pub mod bailey;
pub mod catalog;
mod error;
pub mod qprod;
pub mod report;
pub mod series;

pub use error::QError;
pub use report::{Mismatch, ReportSet, Status, VerifyReport};
pub use series::{Comparison, QSeries, Sign};
