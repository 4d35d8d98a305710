//! Finite sets of trees, coded as tuples of `<member,alpha>` pairs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tree::{subterm, subtrees, tuple, Tree};

/// Code a finite set as the tuple `<<x1,alpha>,...,<xk,alpha>>` with the
/// members in canonical order. The empty set codes as a single leaf.
/// Members must not contain `alpha` as a subtree.
pub fn encode_set(members: &BTreeSet<Tree>, alpha: &Tree) -> Result<Tree> {
    for m in members {
        if subterm(alpha, m) {
            return Err(Error::Domain(format!(
                "set member {m} contains the membership parameter {alpha}"
            )));
        }
    }
    if members.is_empty() {
        return Ok(Tree::Leaf);
    }
    let pairs: Vec<Tree> = members
        .iter()
        .map(|m| Tree::pair(m.clone(), alpha.clone()))
        .collect();
    tuple(&pairs)
}

/// The set coded by an arbitrary tree: all `x` with `<x,alpha>` a subtree
/// of `t` and `alpha` not a subtree of `x`.
pub fn decode_set(t: &Tree, alpha: &Tree) -> BTreeSet<Tree> {
    let mut out = BTreeSet::new();
    for s in subtrees(t) {
        if let Some((x, a)) = s.children() {
            if a == alpha && !subterm(alpha, x) {
                out.insert(x.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate, parse_tree};

    fn alpha() -> Tree {
        parse_tree("<_,<_,_>>").unwrap()
    }

    #[test]
    fn leaf_parameter_encodes_nothing() {
        // with alpha = leaf every tree codes the empty set
        for n in 1..=5u64 {
            for t in enumerate(n).unwrap() {
                assert!(decode_set(&t, &Tree::Leaf).is_empty());
            }
        }
    }

    #[test]
    fn round_trip_small_sets() {
        let a = alpha();
        let set: BTreeSet<Tree> = [Tree::chain(3), Tree::chain(4)].into_iter().collect();
        let t = encode_set(&set, &a).unwrap();
        assert_eq!(decode_set(&t, &a), set);
        assert_eq!(encode_set(&BTreeSet::new(), &a).unwrap(), Tree::Leaf);
    }

    #[test]
    fn round_trip_exhaustive() {
        // all alpha-free member sets of at most 3 members of size <= 4
        let a = alpha();
        let pool: Vec<Tree> = (1..=4u64)
            .flat_map(|n| enumerate(n).unwrap())
            .filter(|t| !subterm(&a, t))
            .collect();
        let n = pool.len();
        let mut count = 0;
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    let mut set = BTreeSet::new();
                    if i < n { set.insert(pool[i].clone()); }
                    if j < n { set.insert(pool[j].clone()); }
                    if k < n { set.insert(pool[k].clone()); }
                    let t = encode_set(&set, &a).unwrap();
                    assert_eq!(decode_set(&t, &a), set);
                    count += 1;
                }
            }
        }
        assert!(count > 50);
    }

    #[test]
    fn rejects_members_containing_alpha() {
        let a = alpha();
        let bad: BTreeSet<Tree> = [Tree::pair(a.clone(), Tree::Leaf)].into_iter().collect();
        assert!(encode_set(&bad, &a).is_err());
    }
}
