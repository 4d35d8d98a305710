//! The compilers: instance-to-sentence translations for each reduction,
//! the arithmetic interpretation, and the equation normal form.

mod arith;
mod existential;
mod h10;
mod modulo_sigma101;
mod modulo_sigma102;
mod pcp_sigma102;
mod subtree;

pub use arith::*;
pub use existential::*;
pub use h10::*;
pub use modulo_sigma101::*;
pub use modulo_sigma102::*;
pub use pcp_sigma102::*;
pub use subtree::*;

use crate::error::{Error, Result};
use crate::formula::{
    check_language, classify, free_vars, in_alpha, nnf_negate, validate, Formula, Lang,
    SigmaProfile, TermExpr,
};
use crate::tree::Tree;

/// Which compiler produced a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    PcpSigma102,
    ModuloSigma101,
    ModuloSigma102,
    PcpSubtree,
    PcpExistential,
    H10Normal,
    DiophantineExistential,
}

impl Provenance {
    pub fn id(self) -> &'static str {
        match self {
            Provenance::PcpSigma102 => "pcp-sigma102",
            Provenance::ModuloSigma101 => "modulo-sigma101",
            Provenance::ModuloSigma102 => "modulo-sigma102",
            Provenance::PcpSubtree => "pcp-subtree",
            Provenance::PcpExistential => "pcp-exist",
            Provenance::H10Normal => "h10",
            Provenance::DiophantineExistential => "diophantine-exist",
        }
    }
}

/// A compiled closed formula together with its language tag, profile and
/// origin. Construction re-checks everything it advertises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub formula: Formula,
    pub language: Lang,
    pub profile: SigmaProfile,
    pub provenance: Provenance,
}

impl Sentence {
    pub fn new(formula: Formula, language: Lang, provenance: Provenance) -> Result<Self> {
        if !free_vars(&formula).is_empty() {
            return Err(Error::InvalidFormula(
                "a sentence must not have free variables".into(),
            ));
        }
        validate(&formula)?;
        check_language(&formula, language)?;
        let profile = classify(&formula).profile;
        Ok(Sentence {
            formula,
            language,
            profile,
            provenance,
        })
    }
}

/// The fixed membership anchor of the numeral-world reductions.
pub(crate) fn membership_anchor() -> Tree {
    Tree::pair(Tree::Leaf, Tree::chain(2))
}

/// `x in T` under the fixed anchor.
pub(crate) fn member(x: TermExpr, t: TermExpr) -> Formula {
    in_alpha(x, TermExpr::from_tree(&membership_anchor()), t)
}

/// `not (x in T)` under the fixed anchor, in negation normal form.
pub(crate) fn not_member(x: TermExpr, t: TermExpr) -> Formula {
    nnf_negate(&member(x, t)).expect("membership is quantifier-free")
}
