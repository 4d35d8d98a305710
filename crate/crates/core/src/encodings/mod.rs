//! Tree-coding devices used by the reduction compilers: numerals, finite
//! sets, numeral-like frame classes, string codecs, multiplication and
//! sequence classes, and the linear-polynomial builders.

mod fraction;
mod mult;
mod numeral;
mod oplus;
mod semigroup;
mod sequence;
mod set;

pub use fraction::*;
pub use mult::*;
pub use numeral::*;
pub use oplus::*;
pub use semigroup::*;
pub use sequence::*;
pub use set::*;
