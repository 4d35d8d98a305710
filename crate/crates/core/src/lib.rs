//! A workbench for the term algebra of finite full binary trees extended
//! with a substitution operator.
//!
//! The crate models the standard structure whose universe is all finite
//! full binary trees, evaluates sigma-fragment sentences over it, compiles
//! Post Correspondence Problem and Modulo Problem instances into such
//! sentences, and builds and checks the corresponding witnesses.

pub mod encodings;
pub mod error;
pub mod eval;
pub mod formula;
pub mod problems;
pub mod reductions;
pub mod tree;

pub use error::{Error, Result};
pub use tree::Tree;
