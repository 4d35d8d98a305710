//! Correspondence problem inside the subtree-only language: string
//! operations become multivalued relations described purely through the
//! subtree order, and the sentence existentially picks its own parameter
//! trees.

use super::{Provenance, Sentence};
use crate::error::Result;
use crate::formula::{nnf_negate, Formula, Lang, TermExpr};
use crate::problems::PCPInstance;

/// Generates fresh bound-variable names within one compiled formula.
struct Names(u32);

impl Names {
    fn next(&mut self, base: &str) -> String {
        self.0 += 1;
        format!("{base}{}", self.0)
    }
}

fn incomparable(a: &TermExpr, b: &TermExpr) -> Vec<Formula> {
    vec![
        Formula::NotSub(a.clone(), b.clone()),
        Formula::NotSub(b.clone(), a.clone()),
    ]
}

fn zero_block(x: &TermExpr, y: &TermExpr, names: &mut Names) -> Formula {
    let z = names.next("q");
    let w = names.next("q");
    let r = names.next("q");
    let zv = TermExpr::var(z.clone());
    let wv = TermExpr::var(w.clone());
    let rv = TermExpr::var(r.clone());
    let closure = Formula::forall_b(
        r,
        y.clone(),
        Formula::or(vec![
            Formula::Eq(rv.clone(), y.clone()),
            Formula::Eq(rv.clone(), zv.clone()),
            Formula::Eq(rv.clone(), wv.clone()),
            Formula::Sub(rv, x.clone()),
        ]),
    );
    Formula::exists_b(
        z,
        y.clone(),
        Formula::and(vec![
            Formula::Sub(x.clone(), zv.clone()),
            Formula::exists_b(
                w,
                y.clone(),
                Formula::and(
                    [
                        vec![Formula::Sub(x.clone(), wv.clone())],
                        incomparable(&zv, &wv),
                        vec![closure],
                    ]
                    .concat(),
                ),
            ),
        ]),
    )
}

fn one_block(x: &TermExpr, y: &TermExpr, names: &mut Names) -> Formula {
    let s = names.next("q");
    let t = names.next("q");
    let r = names.next("q");
    let sv = TermExpr::var(s.clone());
    let tv = TermExpr::var(t.clone());
    let rv = TermExpr::var(r.clone());
    let closure = Formula::forall_b(
        r,
        y.clone(),
        Formula::or(vec![
            Formula::Eq(rv.clone(), y.clone()),
            Formula::Sub(rv.clone(), sv.clone()),
            Formula::Sub(rv, tv.clone()),
        ]),
    );
    let zero_s = zero_block(x, &sv, names);
    let zero_t = zero_block(x, &tv, names);
    Formula::exists_b(
        s,
        y.clone(),
        Formula::and(vec![
            zero_s,
            Formula::exists_b(
                t,
                y.clone(),
                Formula::and([vec![zero_t], incomparable(&sv, &tv), vec![closure]].concat()),
            ),
        ]),
    )
}

fn conc_block(word: &str, x: &TermExpr, y: &TermExpr, names: &mut Names) -> Formula {
    let mut chars: Vec<char> = word.chars().collect();
    let last = chars.pop().expect("nonempty codeword");
    let step = |x: &TermExpr, y: &TermExpr, c: char, names: &mut Names| {
        if c == '0' {
            zero_block(x, y, names)
        } else {
            one_block(x, y, names)
        }
    };
    if chars.is_empty() {
        return step(x, y, last, names);
    }
    let z = names.next("q");
    let zv = TermExpr::var(z.clone());
    let prefix: String = chars.into_iter().collect();
    let inner = conc_block(&prefix, x, &zv, names);
    let last_step = step(&zv, y, last, names);
    Formula::exists_b(z, y.clone(), Formula::and(vec![inner, last_step]))
}

// The upward closure alone is trivially satisfied by a leaf, so the
// witnessing subtree must also be required to contain both the element and
// the anchor; only then is it forced to be one of the two pairings.
fn member_block(x: &TermExpr, alpha: &TermExpr, y: &TermExpr, names: &mut Names) -> Formula {
    let z = names.next("q");
    let u = names.next("q");
    let zv = TermExpr::var(z.clone());
    let uv = TermExpr::var(u.clone());
    Formula::and(vec![
        Formula::NotSub(x.clone(), alpha.clone()),
        Formula::NotSub(alpha.clone(), x.clone()),
        Formula::exists_b(
            z,
            y.clone(),
            Formula::and(vec![
                Formula::Sub(x.clone(), zv.clone()),
                Formula::Sub(alpha.clone(), zv.clone()),
                Formula::forall_b(
                    u,
                    zv.clone(),
                    Formula::or(vec![
                        Formula::Eq(uv.clone(), zv.clone()),
                        Formula::Sub(uv.clone(), x.clone()),
                        Formula::Sub(uv, alpha.clone()),
                    ]),
                ),
            ]),
        ),
    ])
}

fn pair_block(
    x: &TermExpr,
    y: &TermExpr,
    z: &TermExpr,
    beta: &TermExpr,
    gamma: &TermExpr,
    names: &mut Names,
) -> Formula {
    let s = names.next("q");
    let t = names.next("q");
    let s0 = names.next("q");
    let t0 = names.next("q");
    let sv = TermExpr::var(s.clone());
    let tv = TermExpr::var(t.clone());
    let s0v = TermExpr::var(s0.clone());
    let t0v = TermExpr::var(t0.clone());

    let cover = |var: &mut Names, whole: &TermExpr, first: &TermExpr, second: &TermExpr| {
        let r = var.next("q");
        let rv = TermExpr::var(r.clone());
        Formula::forall_b(
            r,
            whole.clone(),
            Formula::or(vec![
                Formula::Eq(rv.clone(), whole.clone()),
                Formula::Sub(rv.clone(), first.clone()),
                Formula::Sub(rv, second.clone()),
            ]),
        )
    };
    let flag_cover = |var: &mut Names, node: &TermExpr, flag: &TermExpr, body: &TermExpr| {
        let r = var.next("q");
        let rv = TermExpr::var(r.clone());
        Formula::forall_b(
            r,
            node.clone(),
            Formula::or(vec![
                Formula::Eq(rv.clone(), node.clone()),
                Formula::Sub(rv.clone(), flag.clone()),
                Formula::Sub(rv, body.clone()),
            ]),
        )
    };

    let zero_s = zero_block(x, &sv, names);
    let zero_t = zero_block(y, &tv, names);
    let s0_cover = flag_cover(names, &s0v, beta, &sv);
    let t0_cover = flag_cover(names, &t0v, gamma, &tv);
    let z_cover = cover(names, z, &s0v, &t0v);

    Formula::and(
        [
            incomparable(beta, gamma),
            vec![Formula::exists_b(
                s,
                z.clone(),
                Formula::and(
                    [
                        vec![zero_s],
                        incomparable(beta, &sv),
                        vec![Formula::exists_b(
                            t,
                            z.clone(),
                            Formula::and(
                                [
                                    vec![zero_t],
                                    incomparable(gamma, &tv),
                                    vec![Formula::exists_b(
                                        s0,
                                        z.clone(),
                                        Formula::and(vec![
                                            s0_cover,
                                            Formula::exists_b(
                                                t0,
                                                z.clone(),
                                                Formula::and(vec![t0_cover, z_cover]),
                                            ),
                                        ]),
                                    )],
                                ]
                                .concat(),
                            ),
                        )],
                    ]
                    .concat(),
                ),
            )],
        ]
        .concat(),
    )
}

/// The append-zero relation as a standalone formula over `x`, `y`.
pub fn zero_formula(x: TermExpr, y: TermExpr) -> Formula {
    zero_block(&x, &y, &mut Names(0))
}

/// The append-one relation as a standalone formula over `x`, `y`.
pub fn one_formula(x: TermExpr, y: TermExpr) -> Formula {
    one_block(&x, &y, &mut Names(0))
}

/// The append-word relation for a nonempty binary word.
pub fn conc_formula(word: &str, x: TermExpr, y: TermExpr) -> Formula {
    conc_block(word, &x, &y, &mut Names(0))
}

/// Set membership expressed through the subtree order alone.
pub fn in_alpha_sigma(x: TermExpr, alpha: TermExpr, y: TermExpr) -> Formula {
    member_block(&x, &alpha, &y, &mut Names(0))
}

/// The multivalued pairing relation with recognizer parameters.
pub fn pair_formula(
    beta: TermExpr,
    gamma: TermExpr,
    x: TermExpr,
    y: TermExpr,
    z: TermExpr,
) -> Formula {
    pair_block(&x, &y, &z, &beta, &gamma, &mut Names(0))
}

/// Compile an instance into a sigma-sentence of the subtree-only language:
/// all parameters are existentially chosen, and the two closure conditions
/// quantify over subtree triples of the witness set.
pub fn pcp_to_sigma_subtree(inst: &PCPInstance) -> Result<Sentence> {
    let alpha = TermExpr::var("alpha");
    let beta = TermExpr::var("beta");
    let gamma = TermExpr::var("gamma");
    let delta = TermExpr::var("delta");
    let t = TermExpr::var("T");
    let l = TermExpr::var("L");
    let r = TermExpr::var("R");
    let s = TermExpr::var("S");
    let mut names = Names(0);

    // some first pair is a member
    let mut first = Vec::new();
    for (a, b) in inst.pairs() {
        let x = names.next("q");
        let y = names.next("q");
        let z = names.next("q");
        let xv = TermExpr::var(x.clone());
        let yv = TermExpr::var(y.clone());
        let zv = TermExpr::var(z.clone());
        let conc_a = conc_block(a, &delta, &xv, &mut names);
        let conc_b = conc_block(b, &delta, &yv, &mut names);
        let pair = pair_block(&xv, &yv, &zv, &beta, &gamma, &mut names);
        let mem = member_block(&zv, &alpha, &t, &mut names);
        first.push(Formula::exists_b(
            x,
            t.clone(),
            Formula::and(vec![
                conc_a,
                Formula::exists_b(
                    y,
                    t.clone(),
                    Formula::and(vec![
                        conc_b,
                        Formula::exists_b(z, t.clone(), Formula::and(vec![pair, mem])),
                    ]),
                ),
            ]),
        ));
    }

    // member pairs with different coordinates extend by some tile
    let mem_s = member_block(&s, &alpha, &t, &mut names);
    let pair_lrs = pair_block(&l, &r, &s, &beta, &gamma, &mut names);
    let mut step = vec![
        nnf_negate(&mem_s)?,
        Formula::Eq(l.clone(), r.clone()),
        nnf_negate(&pair_lrs)?,
    ];
    for (a, b) in inst.pairs() {
        let u = names.next("q");
        let v = names.next("q");
        let w = names.next("q");
        let uv = TermExpr::var(u.clone());
        let vv = TermExpr::var(v.clone());
        let wv = TermExpr::var(w.clone());
        let conc_a = conc_block(a, &l, &uv, &mut names);
        let conc_b = conc_block(b, &r, &vv, &mut names);
        let pair = pair_block(&uv, &vv, &wv, &beta, &gamma, &mut names);
        let mem = member_block(&wv, &alpha, &t, &mut names);
        step.push(Formula::exists_b(
            u,
            t.clone(),
            Formula::and(vec![
                conc_a,
                Formula::exists_b(
                    v,
                    t.clone(),
                    Formula::and(vec![
                        conc_b,
                        Formula::exists_b(w, t.clone(), Formula::and(vec![pair, mem])),
                    ]),
                ),
            ]),
        ));
    }

    let matrix = Formula::and(vec![Formula::or(first), Formula::or(step)]);
    let formula = Formula::exists(
        "alpha",
        Formula::exists(
            "beta",
            Formula::exists(
                "gamma",
                Formula::exists(
                    "delta",
                    Formula::exists(
                        "T",
                        Formula::forall_b(
                            "L",
                            t.clone(),
                            Formula::forall_b(
                                "R",
                                t.clone(),
                                Formula::forall_b("S", t, matrix),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    );
    Sentence::new(formula, Lang::TMinus, Provenance::PcpSubtree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_decidable, Assignment, EvalCtx};
    use crate::formula::{check_language, classify};
    use crate::tree::{parse_tree, Tree};

    fn assign(pairs: &[(&str, Tree)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    fn zero_realization(x: &Tree) -> Tree {
        // <<x,u>,<x,v>> for the two smallest distinct subtrees u, v of x
        let subs = crate::tree::subtrees(x);
        Tree::pair(
            Tree::pair(x.clone(), subs[0].clone()),
            Tree::pair(x.clone(), subs[1].clone()),
        )
    }

    #[test]
    fn zero_block_holds_on_the_canonical_realization() {
        let mut ctx = EvalCtx::new();
        let f = zero_formula(TermExpr::var("x"), TermExpr::var("y"));
        let x = Tree::chain(4);
        let y = zero_realization(&x);
        assert!(eval_decidable(&mut ctx, &f, &assign(&[("x", x.clone()), ("y", y.clone())])).unwrap());
        // swapped arguments fail
        assert!(!eval_decidable(&mut ctx, &f, &assign(&[("x", y), ("y", x)])).unwrap());
    }

    #[test]
    fn one_block_needs_three_subtrees() {
        let mut ctx = EvalCtx::new();
        let f = one_formula(TermExpr::var("x"), TermExpr::var("y"));
        let x = Tree::chain(4);
        let subs = crate::tree::subtrees(&x);
        let s = Tree::pair(
            Tree::pair(x.clone(), subs[0].clone()),
            Tree::pair(x.clone(), subs[1].clone()),
        );
        let t = Tree::pair(
            Tree::pair(x.clone(), subs[0].clone()),
            Tree::pair(x.clone(), subs[2].clone()),
        );
        let y = Tree::pair(s, t);
        assert!(eval_decidable(&mut ctx, &f, &assign(&[("x", x.clone()), ("y", y.clone())])).unwrap());
        assert!(!eval_decidable(&mut ctx, &f, &assign(&[("x", y), ("y", x)])).unwrap());
    }

    #[test]
    fn membership_block_matches_the_quantifier_free_version() {
        let mut ctx = EvalCtx::new();
        let alpha = parse_tree("<_,<_,_>>").unwrap();
        let f = in_alpha_sigma(TermExpr::var("x"), TermExpr::var("al"), TermExpr::var("y"));
        // one genuine member and one stray tree
        let member_tree = Tree::chain(3);
        let y = Tree::pair(member_tree.clone(), alpha.clone());
        assert!(eval_decidable(
            &mut ctx,
            &f,
            &assign(&[("x", member_tree), ("al", alpha.clone()), ("y", y.clone())])
        )
        .unwrap());
        assert!(!eval_decidable(
            &mut ctx,
            &f,
            &assign(&[("x", Tree::chain(5)), ("al", alpha), ("y", y)])
        )
        .unwrap());
    }

    #[test]
    fn sentence_shape() {
        let inst = PCPInstance::new(vec![("0".into(), "0".into())]).unwrap();
        let s = pcp_to_sigma_subtree(&inst).unwrap();
        assert_eq!(s.language, Lang::TMinus);
        assert!(check_language(&s.formula, Lang::TMinus).is_ok());
        let c = classify(&s.formula);
        assert_eq!(c.profile.unbounded_exists, 5);
        assert!(c.profile.bounded_forall >= 3);
    }
}
