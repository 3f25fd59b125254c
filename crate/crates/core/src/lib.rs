//! Distance-preserving subgraphs with few branching vertices.
//!
//! Single-source problems on interval graphs are solved exactly; all-pairs
//! problems on bi-interval graphs get an `O(k^2)`-branching construction.

pub mod cover;
pub mod error;
pub mod flow;
pub mod generate;
pub mod interval;
pub mod io;
pub mod layering;
pub mod oracle;
pub mod sssp;
pub mod biinterval;

pub use error::{Error, Result};
pub use interval::{Direction, Endpoint, Interval, IntervalGraph, Path};
