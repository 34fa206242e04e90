//! Exact-arithmetic enumeration of b-uniform hypergraphs by excess, uniform
//! random generation through a Prüfer-style forest codec, and average-case
//! analysis of two random processes (greedy hypermatching, edge-by-edge
//! evolution until the first cycle). Every closed formula is cross-validated
//! against a brute-force oracle.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the
//! `excessum` binary, both thin layers over this library.

pub mod asympt;
pub mod cli;
pub mod codec;
pub mod counts;
pub mod error;
pub mod evolving;
pub mod greedy;
pub mod hl;
pub mod hypergraph;
pub mod laurent;
pub mod parallel;
pub mod ratio;
pub mod series;
pub mod species;
pub mod ucyc;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use laurent::LaurentPoly;
pub use ratio::Rat;
pub use series::TruncSeries;
pub use species::{SmoothGf, Uniformity};
