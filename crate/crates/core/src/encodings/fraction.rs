//! Numeral-like classes built from an anchor tree and a frame of side
//! trees: the m-th element stacks m copies of the frame over the anchor.

use crate::error::{Error, Result};
use crate::formula::{Formula, TermExpr};
use crate::tree::{subterm, substitute, tuple, Tree};

/// Parameters of a frame class: an anchor `alpha` and a nonempty list of
/// side trees. The anchor must not be a subtree of any side tree, and the
/// last side tree must differ from all earlier ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionParams {
    pub alpha: Tree,
    pub sides: Vec<Tree>,
}

impl FractionParams {
    pub fn new(alpha: Tree, sides: Vec<Tree>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::Domain("frame class needs at least one side tree".into()));
        }
        for s in &sides {
            if subterm(&alpha, s) {
                return Err(Error::Domain(format!(
                    "anchor {alpha} is a subtree of side tree {s}"
                )));
            }
        }
        let last = sides.last().unwrap();
        if sides[..sides.len() - 1].contains(last) {
            return Err(Error::Domain(
                "last side tree must differ from all earlier side trees".into(),
            ));
        }
        Ok(FractionParams { alpha, sides })
    }

    /// `<alpha, s1, ..., sn>`, the first element of the class.
    pub fn one(&self) -> Tree {
        let mut parts = vec![self.alpha.clone()];
        parts.extend(self.sides.iter().cloned());
        tuple(&parts).expect("nonempty")
    }
}

/// The m-th class element for m >= 1: each step substitutes the previous
/// element for the anchor inside the first element.
pub fn fraction(m: u64, p: &FractionParams) -> Result<Tree> {
    if m == 0 {
        return Err(Error::Domain("fraction index must be at least 1".into()));
    }
    let one = p.one();
    let mut t = one.clone();
    for _ in 1..m {
        t = substitute(&one, &p.alpha, &t);
    }
    Ok(t)
}

/// Decode a class element back to its index, if it is one.
pub fn fraction_value(t: &Tree, p: &FractionParams) -> Option<u64> {
    let mut cur = t;
    let mut m = 0u64;
    loop {
        // peel one frame: cur must be <x, s1, ..., sn> as nested pairs
        let mut node = cur;
        let mut ok = true;
        for s in p.sides.iter().rev() {
            match node.children() {
                Some((l, r)) if r == s => node = l,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            return None;
        }
        m += 1;
        if node == &p.alpha {
            return Some(m);
        }
        cur = node;
    }
}

/// Semantic membership in the class.
pub fn n_class_member(t: &Tree, p: &FractionParams) -> bool {
    fraction_value(t, p).is_some()
}

/// The quantifier-free characterization of class membership:
/// `x = 1  or  (2 sub x  and  x = 1[alpha -> x[2 -> 1]])`
/// where `1` and `2` are the first two class elements.
pub fn n_class_formula(x: TermExpr, p: &FractionParams) -> Formula {
    let one = TermExpr::from_tree(&fraction(1, p).expect("m >= 1"));
    let two = TermExpr::from_tree(&fraction(2, p).expect("m >= 1"));
    let alpha = TermExpr::from_tree(&p.alpha);
    let unfold = TermExpr::subst(
        one.clone(),
        alpha,
        TermExpr::subst(x.clone(), two.clone(), one.clone()),
    );
    Formula::or(vec![
        Formula::Eq(x.clone(), one),
        Formula::and(vec![Formula::Sub(two, x.clone()), Formula::Eq(x, unfold)]),
    ])
}

/// Membership in the class extended with the anchor itself.
pub fn n_class_or_anchor_formula(x: TermExpr, p: &FractionParams) -> Formula {
    let alpha = TermExpr::from_tree(&p.alpha);
    Formula::or(vec![Formula::Eq(x.clone(), alpha), n_class_formula(x, p)])
}
