//! Coding strings over a finite alphabet as trees, reading bottom-up from
//! left to right, together with the concatenation, tally-length and domain
//! formulas that make the coded free semigroup existentially definable.

use crate::encodings::fraction::{n_class_formula, FractionParams};
use crate::error::{Error, Result};
use crate::formula::{Formula, TermExpr};
use crate::tree::Tree;

/// The i-th letter tree (1-based): a pair of two equal chains whose length
/// grows with the index, so distinct letters are pairwise incomparable.
pub fn letter(i: usize) -> Tree {
    let chain = Tree::chain(3 + i as u64);
    Tree::pair(chain.clone(), chain)
}

/// The code of the empty string.
pub fn empty_word() -> Tree {
    Tree::pair(Tree::Leaf, Tree::chain(2))
}

/// Left-to-right code of a word given as 1-based letter indices.
pub fn tau_ltr(word: &[usize]) -> Tree {
    let mut t = empty_word();
    for &i in word {
        t = Tree::pair(t, letter(i));
    }
    t
}

/// Decode a left-to-right word code. `alphabet` is the alphabet size.
pub fn tau_ltr_decode(t: &Tree, alphabet: usize) -> Option<Vec<usize>> {
    let mut rev = Vec::new();
    let mut cur = t;
    loop {
        if cur == &empty_word() {
            rev.reverse();
            return Some(rev);
        }
        let (rest, last) = cur.children()?;
        let i = (1..=alphabet).find(|&i| &letter(i) == last)?;
        rev.push(i);
        cur = rest;
    }
}

/// `x ^ y = z` as a formula: `z = y[empty -> x]`.
pub fn concat_formula(x: TermExpr, y: TermExpr, z: TermExpr) -> Formula {
    let eps = TermExpr::from_tree(&empty_word());
    Formula::Eq(z, TermExpr::subst(y, eps, x))
}

/// Tally length towards letter `k`: `y = x[g1 -> gk]...[gn -> gk]`.
pub fn tally_formula(x: TermExpr, y: TermExpr, alphabet: usize, k: usize) -> Formula {
    let gk = TermExpr::from_tree(&letter(k));
    let steps = (1..=alphabet).map(|i| (TermExpr::from_tree(&letter(i)), gk.clone()));
    Formula::Eq(y, TermExpr::subst_chain(x, steps))
}

/// Quantifier-free domain formula for the image of the codec: replacing
/// every letter by the first letter must land in the frame class over the
/// empty-word anchor (or be the empty word itself).
pub fn tau_ltr_domain_formula(x: TermExpr, alphabet: usize) -> Result<Formula> {
    if alphabet == 0 {
        return Err(Error::Domain("alphabet must be nonempty".into()));
    }
    let eps = empty_word();
    let p = FractionParams::new(eps.clone(), vec![letter(1)])?;
    let g1 = TermExpr::from_tree(&letter(1));
    let steps = (2..=alphabet).map(|i| (TermExpr::from_tree(&letter(i)), g1.clone()));
    let collapsed = TermExpr::subst_chain(x, steps);
    Ok(Formula::or(vec![
        Formula::Eq(collapsed.clone(), TermExpr::from_tree(&eps)),
        n_class_formula(collapsed, &p),
    ]))
}
