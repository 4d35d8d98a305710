//! Syntax of the three term-algebra languages, the sigma-fragment
//! classification, and the text format for terms and formulas.

mod syntax;
mod text;

pub use syntax::*;
pub use text::{parse_formula, parse_term, render_formula, render_term};
