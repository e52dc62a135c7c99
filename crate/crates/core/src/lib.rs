//! Causal regularization numerics: test functions, finite-part extensions,
//! the QED2 vacuum polarization, regulated anomalies and lattice smearing.

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod anomaly;
pub mod causal2d;
pub mod clifford;
pub mod distext;
pub mod error;
pub mod jet;
pub mod quad;
pub mod smear2d;
pub mod testfn;

pub use error::{Error, Result};
