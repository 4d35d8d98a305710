//! Finite full binary trees and the basic operations on them: the subtree
//! relation, substitution, subtree enumeration and the tuple notation used
//! throughout the rest of the crate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite full binary tree. Every node has exactly zero or two children.
///
/// Values are immutable; structural equality is the only equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Pair(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn pair(left: Tree, right: Tree) -> Tree {
        Tree::Pair(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    /// Number of leaves. This is the size measure used everywhere in the
    /// crate; a left-nested chain of n leaves has size n.
    pub fn size(&self) -> u64 {
        match self {
            Tree::Leaf => 1,
            Tree::Pair(l, r) => l.size() + r.size(),
        }
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match self {
            Tree::Leaf => None,
            Tree::Pair(l, r) => Some((l, r)),
        }
    }

    /// Left-nested chain of `n` leaves: `chain(1) = _`, `chain(n+1) = <chain(n),_>`.
    pub fn chain(n: u64) -> Tree {
        assert!(n >= 1, "chain length must be at least 1");
        let mut t = Tree::Leaf;
        for _ in 1..n {
            t = Tree::pair(t, Tree::Leaf);
        }
        t
    }

    /// Inverse of [`Tree::chain`]: the length of a left-nested chain.
    pub fn chain_len(&self) -> Option<u64> {
        let mut t = self;
        let mut n = 1;
        loop {
            match t {
                Tree::Leaf => return Some(n),
                Tree::Pair(l, r) if r.is_leaf() => {
                    n += 1;
                    t = l;
                }
                _ => return None,
            }
        }
    }
}

/// Canonical total order: by size first, then ascending left-subtree size,
/// then recursively by left and right subtree. `enumerate` lists trees of a
/// fixed size in exactly this order.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| match (self, other) {
            (Tree::Leaf, Tree::Leaf) => Ordering::Equal,
            (Tree::Pair(a, b), Tree::Pair(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            // unreachable for equal sizes, but keep a total order anyway
            (Tree::Leaf, _) => Ordering::Less,
            (_, Tree::Leaf) => Ordering::Greater,
        })
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `s` is a subtree of `t` iff `s = t`, or `t = <t1,t2>` and `s` is a subtree
/// of `t1` or of `t2`.
pub fn subterm(s: &Tree, t: &Tree) -> bool {
    if s == t {
        return true;
    }
    match t {
        Tree::Leaf => false,
        Tree::Pair(l, r) => subterm(s, l) || subterm(s, r),
    }
}

/// `t[from -> to]`: replace every occurrence of `from` in `t` by `to`,
/// top-down. Occurrences of `from` inside `to` are not rewritten again.
pub fn substitute(t: &Tree, from: &Tree, to: &Tree) -> Tree {
    if t == from {
        return to.clone();
    }
    match t {
        Tree::Leaf => Tree::Leaf,
        Tree::Pair(l, r) => Tree::pair(substitute(l, from, to), substitute(r, from, to)),
    }
}

/// All distinct subtrees of `t`, in canonical order.
pub fn subtrees(t: &Tree) -> Vec<Tree> {
    let mut set = BTreeSet::new();
    fn walk(t: &Tree, set: &mut BTreeSet<Tree>) {
        if set.contains(t) {
            return;
        }
        if let Tree::Pair(l, r) = t {
            walk(l, set);
            walk(r, set);
        }
        set.insert(t.clone());
    }
    walk(t, &mut set);
    set.into_iter().collect()
}

/// The n-th Catalan number.
pub fn catalan(n: u64) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// All trees with exactly `n` leaves, ordered by ascending left-subtree size,
/// then recursively by left and right order. The result has `catalan(n-1)`
/// elements.
pub fn enumerate(n: u64) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::Domain("enumerate: size must be at least 1".into()));
    }
    let mut table: Vec<Vec<Tree>> = vec![Vec::new(); (n + 1) as usize];
    table[1] = vec![Tree::Leaf];
    for k in 2..=n {
        let mut out = Vec::new();
        for i in 1..k {
            for l in &table[i as usize] {
                for r in &table[(k - i) as usize] {
                    out.push(Tree::pair(l.clone(), r.clone()));
                }
            }
        }
        table[k as usize] = out;
    }
    Ok(table.swap_remove(n as usize))
}

/// Left-nested tuple: `tuple([x]) = x`, `tuple([x1..xk,x]) = <tuple([x1..xk]),x>`.
pub fn tuple(xs: &[Tree]) -> Result<Tree> {
    let (first, rest) = xs
        .split_first()
        .ok_or_else(|| Error::Domain("tuple: empty list".into()))?;
    let mut t = first.clone();
    for x in rest {
        t = Tree::pair(t, x.clone());
    }
    Ok(t)
}

/// `power(t,1) = t`, `power(t,n+1) = <power(t,n),t>`: an n-fold tuple of `t`.
pub fn power(t: &Tree, n: u64) -> Result<Tree> {
    if n == 0 {
        return Err(Error::Domain("power: exponent must be at least 1".into()));
    }
    let mut out = t.clone();
    for _ in 1..n {
        out = Tree::pair(out, t.clone());
    }
    Ok(out)
}

/// Append `rest` on the right of a tree viewed as a tuple.
pub fn tconcat(a: &Tree, rest: &[Tree]) -> Tree {
    let mut t = a.clone();
    for x in rest {
        t = Tree::pair(t, x.clone());
    }
    t
}

/// Parse the canonical text form: `tree := "_" | "<" tree "," tree ">"`,
/// whitespace-insensitive.
pub fn parse_tree(input: &str) -> Result<Tree> {
    let bytes = input.as_bytes();
    let mut pos = 0;
    let tree = parse_tree_at(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(Error::Parse {
            pos,
            msg: "trailing input after tree".into(),
        });
    }
    Ok(tree)
}

pub(crate) fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

pub(crate) fn parse_tree_at(bytes: &[u8], pos: &mut usize) -> Result<Tree> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'_') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some(b'<') => {
            *pos += 1;
            let left = parse_tree_at(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b',') {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected `,`".into(),
                });
            }
            *pos += 1;
            let right = parse_tree_at(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b'>') {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected `>`".into(),
                });
            }
            *pos += 1;
            Ok(Tree::pair(left, right))
        }
        _ => Err(Error::Parse {
            pos: *pos,
            msg: "expected `_` or `<`".into(),
        }),
    }
}

/// Canonical rendering: no whitespace, `_` for the leaf.
pub fn render_tree(t: &Tree) -> String {
    t.to_string()
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "_"),
            Tree::Pair(l, r) => write!(f, "<{},{}>", l, r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf() -> Tree {
        Tree::Leaf
    }

    #[test]
    fn subterm_base_cases() {
        let p = Tree::pair(leaf(), leaf());
        assert!(subterm(&leaf(), &p));
        assert!(!subterm(&p, &leaf()));
        // <_,<_,_>> is not a subtree of the chain of three leaves
        let rh = Tree::pair(leaf(), Tree::pair(leaf(), leaf()));
        assert!(!subterm(&rh, &Tree::chain(3)));
    }

    #[test]
    fn substitute_cases() {
        let p = Tree::pair(leaf(), leaf());
        let doubled = substitute(&p, &leaf(), &p);
        assert_eq!(doubled, Tree::pair(p.clone(), p.clone()));
        // identity substitution
        let t = Tree::chain(5);
        assert_eq!(substitute(&t, &p, &p), t);
        // chain of 3 with <_,_> replaced by chain of 3 doubles the chain
        assert_eq!(substitute(&Tree::chain(3), &p, &Tree::chain(3)), Tree::chain(4));
    }

    #[test]
    fn substitute_no_occurrence_is_identity() {
        // all (t, r, s) with at most 4 leaves
        let pool: Vec<Tree> = (1..=4).flat_map(|n| enumerate(n).unwrap()).collect();
        for t in &pool {
            for r in &pool {
                for s in &pool {
                    if !subterm(r, t) {
                        assert_eq!(&substitute(t, r, s), t);
                    }
                }
            }
        }
    }

    #[test]
    fn substitute_size_monotone() {
        let pool: Vec<Tree> = (1..=4).flat_map(|n| enumerate(n).unwrap()).collect();
        for t in &pool {
            for r in &pool {
                for s in &pool {
                    if s.size() >= r.size() {
                        assert!(substitute(t, r, s).size() >= t.size());
                    }
                }
            }
        }
    }

    #[test]
    fn subterm_is_partial_order_small() {
        let pool: Vec<Tree> = (1..=6).flat_map(|n| enumerate(n).unwrap()).collect();
        assert_eq!(pool.len(), 65);
        for x in &pool {
            assert!(subterm(x, x));
            for y in &pool {
                if subterm(x, y) && subterm(y, x) {
                    assert_eq!(x, y);
                }
            }
        }
        // transitivity on the leaf count boundary is cheap enough to brute force
        for x in &pool {
            for y in &pool {
                if !subterm(x, y) {
                    continue;
                }
                for z in &pool {
                    if subterm(y, z) {
                        assert!(subterm(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn subtrees_examples() {
        assert_eq!(subtrees(&leaf()), vec![leaf()]);
        let p = Tree::pair(leaf(), leaf());
        assert_eq!(subtrees(&p), vec![leaf(), p.clone()]);
        let c4 = Tree::chain(4);
        assert_eq!(
            subtrees(&c4),
            vec![leaf(), Tree::chain(2), Tree::chain(3), c4.clone()]
        );
    }

    #[test]
    fn enumerate_counts_and_order() {
        assert_eq!(enumerate(1).unwrap(), vec![leaf()]);
        assert_eq!(enumerate(2).unwrap(), vec![Tree::pair(leaf(), leaf())]);
        let threes = enumerate(3).unwrap();
        assert_eq!(
            threes,
            vec![
                Tree::pair(leaf(), Tree::pair(leaf(), leaf())),
                Tree::pair(Tree::pair(leaf(), leaf()), leaf()),
            ]
        );
        for n in 1..=10u64 {
            let ts = enumerate(n).unwrap();
            assert_eq!(ts.len() as u64, catalan(n - 1));
            let mut sorted = ts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, ts, "enumeration order must match canonical order");
            assert!(ts.iter().all(|t| t.size() == n));
        }
        assert!(enumerate(0).is_err());
    }

    #[test]
    fn tuple_power_concat() {
        let a = leaf();
        let b = Tree::pair(leaf(), leaf());
        let c = Tree::chain(3);
        assert_eq!(
            tuple(&[a.clone(), b.clone(), c.clone()]).unwrap(),
            Tree::pair(Tree::pair(a.clone(), b.clone()), c.clone())
        );
        assert_eq!(power(&leaf(), 3).unwrap(), Tree::chain(3));
        assert!(tuple(&[]).is_err());
        assert!(power(&leaf(), 0).is_err());
        let x = Tree::chain(2);
        assert_eq!(
            tconcat(&x, &[leaf(), leaf()]),
            Tree::pair(Tree::pair(x.clone(), leaf()), leaf())
        );
    }

    #[test]
    fn parse_render_round_trip() {
        assert_eq!(parse_tree("_").unwrap(), leaf());
        assert_eq!(
            parse_tree("<_,<_,_>>").unwrap(),
            Tree::pair(leaf(), Tree::pair(leaf(), leaf()))
        );
        assert_eq!(render_tree(&Tree::chain(3)), "<<_,_>,_>");
        assert_eq!(parse_tree(" < _ , _ > ").unwrap(), Tree::pair(leaf(), leaf()));
        for n in 1..=6u64 {
            for t in enumerate(n).unwrap() {
                assert_eq!(parse_tree(&render_tree(&t)).unwrap(), t);
            }
        }
        assert!(parse_tree("<_,_").is_err());
        assert!(parse_tree("boom").is_err());
        assert!(parse_tree("_ x").is_err());
    }
}
