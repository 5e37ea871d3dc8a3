// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod criticality;
pub mod error;
pub mod gap;
pub mod lattice_sums;
pub mod series;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use series::{SeriesValue, TruncationPolicy};
