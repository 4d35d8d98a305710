//! Correspondence problem to a one-existential, two-bounded-universal
//! sentence over the pairing language: a witness set must contain a first
//! pair and be closed under extending unequal pairs by some tile.

use super::{member, not_member, Provenance, Sentence};
use crate::error::Result;
use crate::formula::{Formula, Lang, TermExpr};
use crate::problems::PCPInstance;
use crate::tree::{tuple, Tree};

/// Letter trees of the two binary digits: chains of three and four leaves.
pub fn digit_tree(c: char) -> Tree {
    match c {
        '0' => Tree::chain(3),
        _ => Tree::chain(4),
    }
}

/// A nonempty binary string as the tuple of its digit trees.
pub fn word_tree(w: &str) -> Tree {
    let digits: Vec<Tree> = w.chars().map(digit_tree).collect();
    tuple(&digits).expect("nonempty word")
}

/// Append a word on the right of a term viewed as a tuple.
pub fn concat_word_term(x: TermExpr, w: &str) -> TermExpr {
    let mut t = x;
    for c in w.chars() {
        t = TermExpr::pair(t, TermExpr::from_tree(&digit_tree(c)));
    }
    t
}

/// Compile an instance into the sentence
/// `exists T . forall L sub T . forall R sub T . [ some first pair is in T
/// and (<L,R> in T and L != R  implies  some extended pair is in T) ]`.
pub fn pcp_to_sigma102(inst: &PCPInstance) -> Result<Sentence> {
    let t = TermExpr::var("T");
    let l = TermExpr::var("L");
    let r = TermExpr::var("R");

    let first = Formula::or(
        inst.pairs()
            .iter()
            .map(|(a, b)| {
                member(
                    TermExpr::pair(
                        TermExpr::from_tree(&word_tree(a)),
                        TermExpr::from_tree(&word_tree(b)),
                    ),
                    t.clone(),
                )
            })
            .collect(),
    );

    let mut step = vec![
        not_member(TermExpr::pair(l.clone(), r.clone()), t.clone()),
        Formula::Eq(l.clone(), r.clone()),
    ];
    for (a, b) in inst.pairs() {
        step.push(member(
            TermExpr::pair(concat_word_term(l.clone(), a), concat_word_term(r.clone(), b)),
            t.clone(),
        ));
    }

    let matrix = Formula::and(vec![first, Formula::or(step)]);
    let formula = Formula::exists(
        "T",
        Formula::forall_b("L", t.clone(), Formula::forall_b("R", t, matrix)),
    );
    Sentence::new(formula, Lang::T, Provenance::PcpSigma102)
}
