//! Correspondence problem to a purely existential sentence over the
//! substitution language: two prefix-sequence chains, their extraction
//! chains agreeing on the index word, and the restored final words equal.

use super::{Provenance, Sentence};
use crate::encodings::{
    gamma_term, p_member_formula, p2_member_formula, tau_mu_plus_domain, theta_term, SeqParams,
};
use crate::error::Result;
use crate::formula::{Formula, Lang, TermExpr};
use crate::problems::PCPInstance;
use crate::tree::Tree;

/// The fixed anchors of the reduction.
pub fn existential_anchors() -> (Tree, Tree) {
    (
        Tree::pair(Tree::Leaf, Tree::chain(2)),
        Tree::pair(Tree::Leaf, Tree::chain(3)),
    )
}

/// Sequence parameters for one side of an instance.
pub fn side_params(words: Vec<String>) -> Result<SeqParams> {
    let (alpha, gamma) = existential_anchors();
    SeqParams::new(words, alpha, gamma)
}

/// One side of the compiled sentence: a prefix-sequence chain, its last
/// word split off, and the extraction chain exposing the index word.
fn side_conjuncts(
    params: &SeqParams,
    chain: &str,
    last: &str,
    rest: &str,
    extraction: &str,
    index_word: &str,
    stepped: &str,
) -> Vec<Formula> {
    let alpha = TermExpr::from_tree(&params.alpha);
    let chain_v = TermExpr::var(chain);
    let w_v = TermExpr::var(extraction);
    let x_v = TermExpr::var(index_word);
    vec![
        p_member_formula(params, chain_v.clone(), chain),
        Formula::Eq(
            chain_v.clone(),
            TermExpr::pair(TermExpr::var(rest), TermExpr::var(last)),
        ),
        tau_mu_plus_domain(params, x_v.clone()),
        Formula::Sub(TermExpr::pair(alpha, x_v), w_v.clone()),
        Formula::Eq(
            w_v.clone(),
            TermExpr::pair(TermExpr::var(stepped), gamma_term(params, chain_v)),
        ),
        p2_member_formula(params, w_v, extraction),
    ]
}

/// Compile an instance into a purely existential sentence.
pub fn pcp_to_existential(inst: &PCPInstance) -> Result<Sentence> {
    let a_side = side_params(inst.pairs().iter().map(|(a, _)| a.clone()).collect())?;
    let b_side = side_params(inst.pairs().iter().map(|(_, b)| b.clone()).collect())?;

    let mut conjuncts = side_conjuncts(&a_side, "L", "U", "U_prime", "W_L", "X_L", "S_L");
    conjuncts.extend(side_conjuncts(&b_side, "R", "V", "V_prime", "W_R", "X_R", "S_R"));
    conjuncts.push(Formula::Eq(
        theta_term(&a_side, TermExpr::var("U")),
        theta_term(&b_side, TermExpr::var("V")),
    ));
    conjuncts.push(Formula::Eq(TermExpr::var("X_L"), TermExpr::var("X_R")));

    let mut formula = Formula::and(conjuncts);
    for var in [
        "S_R", "X_R", "W_R", "S_L", "X_L", "W_L", "V", "V_prime", "R", "U", "U_prime", "L",
    ] {
        formula = Formula::exists(var, formula);
    }
    Sentence::new(formula, Lang::Bt, Provenance::PcpExistential)
}
