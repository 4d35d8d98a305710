//! Natural numbers as left-nested leaf chains, and the linear-polynomial
//! term builder for the substitution language.

use crate::formula::TermExpr;
use crate::tree::Tree;

/// The two chain encodings in use: `Mod` maps n to the chain of n+2 leaves,
/// `Pcp` maps n to the chain of n+1 leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumeralScheme {
    Mod,
    Pcp,
}

impl NumeralScheme {
    fn offset(self) -> u64 {
        match self {
            NumeralScheme::Mod => 2,
            NumeralScheme::Pcp => 1,
        }
    }
}

pub fn numeral(scheme: NumeralScheme, n: u64) -> Tree {
    Tree::chain(n + scheme.offset())
}

/// Decode a chain back to its numeral value, if the tree is a chain long
/// enough for the scheme.
pub fn numeral_value(scheme: NumeralScheme, t: &Tree) -> Option<u64> {
    let len = t.chain_len()?;
    len.checked_sub(scheme.offset())
}

/// One doubling step `L(z) = z[zero -> z]` in the `Mod` scheme, where
/// `zero` is the two-leaf chain.
pub fn doubling_step(z: TermExpr) -> TermExpr {
    let zero = TermExpr::from_tree(&numeral(NumeralScheme::Mod, 0));
    TermExpr::subst(z.clone(), zero, z)
}

/// Scalar multiple `n*z` as an iterated base substitution: each step plugs
/// the previous term into the zero slot of a fresh copy of `z`, so a
/// q-numeral accumulates to an nq-numeral.
pub fn scalar_multiple(n: u64, z: TermExpr) -> TermExpr {
    assert!(n >= 1, "scalar multiple needs a positive factor");
    let zero = TermExpr::from_tree(&numeral(NumeralScheme::Mod, 0));
    let mut inner = z.clone();
    for _ in 1..n {
        inner = TermExpr::subst(z.clone(), zero.clone(), inner);
    }
    inner
}

/// Term representing `n*z + m` in the `Mod` scheme: the m-numeral with its
/// unique zero-chain base replaced by the n-fold multiple of `z`; for
/// `n = 0` just the m-numeral.
pub fn linpoly_bt(n: u64, z: TermExpr, m: u64) -> TermExpr {
    let m_num = TermExpr::from_tree(&numeral(NumeralScheme::Mod, m));
    if n == 0 {
        return m_num;
    }
    let zero = TermExpr::from_tree(&numeral(NumeralScheme::Mod, 0));
    TermExpr::subst(m_num, zero, scalar_multiple(n, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_term, Assignment, EvalCtx};

    #[test]
    fn numeral_shapes() {
        assert_eq!(numeral(NumeralScheme::Mod, 0), Tree::chain(2));
        assert_eq!(numeral(NumeralScheme::Mod, 3), Tree::chain(5));
        assert_eq!(numeral(NumeralScheme::Pcp, 0), Tree::Leaf);
        assert_eq!(numeral_value(NumeralScheme::Mod, &Tree::chain(5)), Some(3));
        assert_eq!(numeral_value(NumeralScheme::Pcp, &Tree::pair(Tree::Leaf, Tree::chain(2))), None);
    }

    #[test]
    fn linpoly_evaluates_to_affine_values() {
        let mut ctx = EvalCtx::new();
        // 2*5 + 1 = 11
        let term = linpoly_bt(2, TermExpr::var("z"), 1);
        let mut a = Assignment::new();
        a.insert("z".into(), numeral(NumeralScheme::Mod, 5));
        let out = eval_term(&mut ctx, &term, &a).unwrap();
        assert_eq!(out, numeral(NumeralScheme::Mod, 11));

        // n = 0 ignores z entirely
        let term = linpoly_bt(0, TermExpr::var("z"), 4);
        let out = eval_term(&mut ctx, &term, &a).unwrap();
        assert_eq!(out, numeral(NumeralScheme::Mod, 4));

        // exhaustive small check
        for n in 0..=4u64 {
            for m in 0..=4u64 {
                for q in 0..=5u64 {
                    let term = linpoly_bt(n, TermExpr::var("z"), m);
                    let mut a = Assignment::new();
                    a.insert("z".into(), numeral(NumeralScheme::Mod, q));
                    let out = eval_term(&mut ctx, &term, &a).unwrap();
                    assert_eq!(out, numeral(NumeralScheme::Mod, n * q + m), "n={n} m={m} q={q}");
                }
            }
        }
    }
}
