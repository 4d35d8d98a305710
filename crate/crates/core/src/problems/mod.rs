//! Source problems, the desk-scale solvers used as oracles, and the
//! witness builders for every reduction.

mod instances;
mod solve;
mod witness;

pub use instances::*;
pub use solve::*;
pub use witness::*;
