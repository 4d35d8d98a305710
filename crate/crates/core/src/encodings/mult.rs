//! Trees coding the computation sequence of a multiplication: the class of
//! tuples `<gamma, <1,n>, <2,2n>, ..., <k,kn>>` with the two coordinates in
//! two different frame classes, plus its existential characterization.

use crate::encodings::fraction::{
    fraction, fraction_value, n_class_or_anchor_formula, FractionParams,
};
use crate::error::{Error, Result};
use crate::formula::{Formula, TermExpr};
use crate::tree::{subterm, substitute, Tree};

/// Parameters of a multiplication class: three pairwise incomparable marker
/// trees, two side trees free of the first two markers, and the fixed
/// factor `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultParams {
    pub alpha: Tree,
    pub beta: Tree,
    pub gamma: Tree,
    pub s: Tree,
    pub t: Tree,
    pub n: u64,
}

impl MultParams {
    pub fn new(alpha: Tree, beta: Tree, gamma: Tree, s: Tree, t: Tree, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("multiplication factor must be positive".into()));
        }
        let markers = [&alpha, &beta, &gamma];
        for (i, a) in markers.iter().enumerate() {
            for b in markers.iter().skip(i + 1) {
                if subterm(a, b) || subterm(b, a) {
                    return Err(Error::Domain(format!(
                        "marker trees must be pairwise incomparable: {a} vs {b}"
                    )));
                }
            }
        }
        for side in [&s, &t] {
            for marker in [&alpha, &beta] {
                if subterm(marker, side) {
                    return Err(Error::Domain(format!(
                        "marker {marker} occurs in side tree {side}"
                    )));
                }
            }
        }
        Ok(MultParams { alpha, beta, gamma, s, t, n })
    }

    pub fn left_params(&self) -> FractionParams {
        FractionParams::new(self.alpha.clone(), vec![self.s.clone()]).expect("checked")
    }

    pub fn right_params(&self) -> FractionParams {
        FractionParams::new(self.beta.clone(), vec![self.t.clone()]).expect("checked")
    }

    /// `<gamma, <1/(alpha,s), n/(beta,t)>>`, the first class element.
    pub fn base_element(&self) -> Tree {
        let one = fraction(1, &self.left_params()).expect("m >= 1");
        let n = fraction(self.n, &self.right_params()).expect("n >= 1");
        Tree::pair(self.gamma.clone(), Tree::pair(one, n))
    }
}

/// The class element recording the computation of `n * k`.
pub fn build_mult_tree(p: &MultParams, k: u64) -> Result<Tree> {
    if k == 0 {
        return Err(Error::Domain("multiplier must be positive".into()));
    }
    let left = p.left_params();
    let right = p.right_params();
    let mut t = p.gamma.clone();
    for i in 1..=k {
        let pair = Tree::pair(fraction(i, &left)?, fraction(i * p.n, &right)?);
        t = Tree::pair(t, pair);
    }
    Ok(t)
}

/// Semantic membership, by decoding the spine of pairs and checking the
/// recorded arithmetic.
pub fn m_class_member(tree: &Tree, p: &MultParams) -> bool {
    let left = p.left_params();
    let right = p.right_params();
    let mut pairs = Vec::new();
    let mut cur = tree;
    loop {
        if cur == &p.gamma {
            break;
        }
        match cur.children() {
            Some((rest, pair)) => {
                pairs.push(pair);
                cur = rest;
            }
            None => return false,
        }
    }
    if pairs.is_empty() {
        return false;
    }
    pairs.reverse();
    for (idx, pair) in pairs.iter().enumerate() {
        let k = idx as u64 + 1;
        let Some((u, v)) = pair.children() else {
            return false;
        };
        if fraction_value(u, &left) != Some(k) || fraction_value(v, &right) != Some(k * p.n) {
            return false;
        }
    }
    true
}

/// The two characterizing conditions, decided semantically: the base
/// element is a subtree, and collapsing base, first coordinate and the
/// n-coordinate reproduces the tree with its last pair split off into some
/// admissible `<L,R>`.
pub fn m_class_conditions(tree: &Tree, p: &MultParams) -> bool {
    let base = p.base_element();
    if !subterm(&base, tree) {
        return false;
    }
    let Some((_, last)) = tree.children() else {
        return false;
    };
    let Some((l, r)) = last.children() else {
        return false;
    };
    let left = p.left_params();
    let right = p.right_params();
    let l_ok = l == &p.alpha || fraction_value(l, &left).is_some();
    let r_ok = r == &p.beta || fraction_value(r, &right).is_some();
    if !l_ok || !r_ok {
        return false;
    }
    let one = fraction(1, &left).expect("m >= 1");
    let n_tree = fraction(p.n, &right).expect("n >= 1");
    let collapsed = substitute(
        &substitute(&substitute(tree, &base, &p.gamma), &one, &p.alpha),
        &n_tree,
        &p.beta,
    );
    tree == &Tree::pair(collapsed, Tree::pair(l.clone(), r.clone()))
}

/// The existential membership formula with the factor given as a term (so
/// the arithmetic interpretation can quantify over it). `l_name`/`r_name`
/// name the two inner existentials.
pub fn m_class_formula_term(
    x: TermExpr,
    n_term: TermExpr,
    p: &MultParams,
    l_name: &str,
    r_name: &str,
) -> Formula {
    let left = p.left_params();
    let right = p.right_params();
    let one = TermExpr::from_tree(&fraction(1, &left).expect("m >= 1"));
    let gamma = TermExpr::from_tree(&p.gamma);
    let alpha = TermExpr::from_tree(&p.alpha);
    let beta = TermExpr::from_tree(&p.beta);
    let base = TermExpr::pair(gamma.clone(), TermExpr::pair(one.clone(), n_term.clone()));
    let l = TermExpr::var(l_name);
    let r = TermExpr::var(r_name);
    let collapsed = TermExpr::subst_chain(
        x.clone(),
        [(base.clone(), gamma), (one, alpha), (n_term, beta)],
    );
    Formula::and(vec![
        Formula::Sub(base, x.clone()),
        Formula::exists(
            l_name,
            Formula::exists(
                r_name,
                Formula::and(vec![
                    n_class_or_anchor_formula(l.clone(), &left),
                    n_class_or_anchor_formula(r.clone(), &right),
                    Formula::Eq(x, TermExpr::pair(collapsed, TermExpr::pair(l, r))),
                ]),
            ),
        ),
    ])
}

/// Membership formula with the factor fixed by the parameters.
pub fn m_class_formula(x: TermExpr, p: &MultParams, l_name: &str, r_name: &str) -> Formula {
    let n_term = TermExpr::from_tree(&fraction(p.n, &p.right_params()).expect("n >= 1"));
    m_class_formula_term(x, n_term, p, l_name, r_name)
}

/// Replace the subtree at preorder position `pos` (over distinct subtree
/// values this is a value mutation): used by tests to probe the lemma
/// conditions off the class.
pub fn mutate_subtree(tree: &Tree, pos: usize, replacement: &Tree) -> Tree {
    fn rec(t: &Tree, pos: &mut usize, replacement: &Tree) -> Tree {
        if *pos == 0 {
            *pos = usize::MAX;
            return replacement.clone();
        }
        *pos -= 1;
        match t {
            Tree::Leaf => Tree::Leaf,
            Tree::Pair(l, r) => {
                let nl = rec(l, pos, replacement);
                let nr = if *pos == usize::MAX { (**r).clone() } else { rec(r, pos, replacement) };
                Tree::pair(nl, nr)
            }
        }
    }
    let mut p = pos;
    rec(tree, &mut p, replacement)
}

/// Number of nodes (inner positions plus leaves), for mutation sampling.
pub fn node_count(t: &Tree) -> usize {
    match t {
        Tree::Leaf => 1,
        Tree::Pair(l, r) => 1 + node_count(l) + node_count(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{verify_witness, Assignment, EvalCtx};
    use crate::formula::Formula;

    fn params(n: u64) -> MultParams {
        // the arithmetic-interpretation parameter set
        MultParams::new(
            Tree::pair(Tree::Leaf, Tree::chain(4)),
            Tree::pair(Tree::Leaf, Tree::chain(5)),
            Tree::pair(Tree::Leaf, Tree::chain(3)),
            Tree::chain(5),
            Tree::chain(5),
            n,
        )
        .unwrap()
    }

    #[test]
    fn base_and_member() {
        let p = params(5);
        let t = build_mult_tree(&p, 3).unwrap();
        assert!(m_class_member(&t, &p));
        assert!(m_class_conditions(&t, &p));
        assert_eq!(build_mult_tree(&p, 1).unwrap(), p.base_element());
        assert!(build_mult_tree(&p, 0).is_err());
        // wrong arithmetic is rejected
        let bogus = Tree::pair(
            p.base_element(),
            Tree::pair(
                fraction(2, &p.left_params()).unwrap(),
                fraction(9, &p.right_params()).unwrap(),
            ),
        );
        assert!(!m_class_member(&bogus, &p));
        assert!(!m_class_conditions(&bogus, &p));
    }

    #[test]
    fn member_iff_conditions_small() {
        for n in 1..=3u64 {
            let p = params(n);
            for k in 1..=3u64 {
                let t = build_mult_tree(&p, k).unwrap();
                assert!(m_class_member(&t, &p));
                assert!(m_class_conditions(&t, &p));
            }
        }
    }

    #[test]
    fn mutations_leave_the_class() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = params(2);
        let t = build_mult_tree(&p, 3).unwrap();
        let count = node_count(&t);
        let mut tested = 0;
        while tested < 200 {
            let pos = rng.gen_range(0..count);
            let repl = match rng.gen_range(0..3) {
                0 => Tree::Leaf,
                1 => Tree::chain(2),
                _ => Tree::pair(Tree::chain(2), Tree::Leaf),
            };
            let mutated = mutate_subtree(&t, pos, &repl);
            if mutated == t || m_class_member(&mutated, &p) {
                continue;
            }
            assert!(
                !m_class_conditions(&mutated, &p),
                "mutation at {pos} satisfies the conditions but is not a member"
            );
            tested += 1;
        }
    }

    #[test]
    fn formula_accepts_built_witness() {
        let p = params(5);
        let w = build_mult_tree(&p, 3).unwrap();
        let f = Formula::exists(
            "w",
            m_class_formula(TermExpr::var("w"), &p, "L", "R"),
        );
        let mut witness = Assignment::new();
        witness.insert("w".into(), w.clone());
        let (_, last) = w.children().unwrap();
        let (l, r) = last.children().unwrap();
        witness.insert("L".into(), l.clone());
        witness.insert("R".into(), r.clone());
        let mut ctx = EvalCtx::new();
        assert!(verify_witness(&mut ctx, &f, &witness).unwrap());
    }
}
