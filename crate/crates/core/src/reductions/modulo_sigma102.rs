//! Modulo problem to a one-existential, two-bounded-universal sentence
//! over the pairing language. Numbers are leaf counts; affine images are
//! recorded as tuple-power shapes, and per-residue rewrite rules walk each
//! recorded shape down to its canonical residue form so the main rule can
//! fire again.

use std::collections::BTreeSet;

use super::{member, not_member, Provenance, Sentence};
use crate::encodings::{
    numeral, numeral_value, opl_term, opl_tree, parse_opl, parse_two, parse_x_plus, two_term,
    two_tree, u_tilde, x_plus, x_plus_term, NumeralScheme,
};
use crate::error::{Error, Result};
use crate::formula::{Formula, Lang, TermExpr};
use crate::problems::ModuloInstance;
use crate::tree::{subterm, Tree};

fn num(v: u64) -> Tree {
    numeral(NumeralScheme::Pcp, v)
}

fn num_term(v: u64) -> TermExpr {
    TermExpr::from_tree(&num(v))
}

/// Which rewrite family a residue rule needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyCase {
    /// `1 <= A < M`, with `M = k*A + r`
    Small { k: u64, r: u64 },
    /// `A > M`, with `A = k*M + r`
    Large { k: u64, r: u64 },
    /// `A` is 0 or M: no rewrite family
    None,
}

fn family_case(modulus: u64, a: u64) -> FamilyCase {
    if a >= 1 && a < modulus {
        FamilyCase::Small { k: modulus / a, r: modulus % a }
    } else if a > modulus {
        FamilyCase::Large { k: a / modulus, r: a % modulus }
    } else {
        FamilyCase::None
    }
}

/// The consequent shape of the main rule for residue `j` in the branch
/// where the bound variable is not the zero numeral.
fn main_consequent_term(modulus: u64, a: u64, b: u64, r_var: TermExpr) -> TermExpr {
    match family_case(modulus, a) {
        FamilyCase::None if a == 0 => {
            TermExpr::from_tree(&u_tilde(b, modulus).expect("modulus checked"))
        }
        FamilyCase::None => {
            // a == modulus: fold the constant into canonical residue shape
            let q = b / modulus;
            let r = b % modulus;
            if q == 0 {
                opl_term(r_var, modulus, b).expect("positive exponent")
            } else {
                opl_term(x_plus_term(r_var, q), modulus, r).expect("positive exponent")
            }
        }
        _ => opl_term(r_var, a, b).expect("positive exponent"),
    }
}

fn main_consequent_tree(modulus: u64, a: u64, b: u64, r: &Tree) -> Tree {
    match family_case(modulus, a) {
        FamilyCase::None if a == 0 => u_tilde(b, modulus).expect("modulus checked"),
        FamilyCase::None => {
            let q = b / modulus;
            let rem = b % modulus;
            if q == 0 {
                opl_tree(r, modulus, b).expect("positive exponent")
            } else {
                opl_tree(&x_plus(r, q), modulus, rem).expect("positive exponent")
            }
        }
        _ => opl_tree(r, a, b).expect("positive exponent"),
    }
}

/// Rewrite-family conjuncts for one residue rule, quantifier-free over the
/// two bound variables.
fn family_conjuncts(modulus: u64, a: u64, b: u64, r_var: &TermExpr, s_var: &TermExpr, t_var: &TermExpr) -> Vec<Formula> {
    let m_ = modulus;
    let one = num_term(1);
    let r = r_var.clone();
    let s = s_var.clone();
    let t = t_var.clone();
    let mem = |x: TermExpr| member(x, t.clone());
    let nmem = |x: TermExpr| not_member(x, t.clone());
    let mut out = Vec::new();
    match family_case(m_, a) {
        FamilyCase::Small { k: kj, r: rj } => {
            // (I)
            for k in 0..=kj {
                let antecedent = if k == 0 {
                    num_term(b)
                } else {
                    TermExpr::from_tree(&opl_tree(&num(k), a, b).expect("positive exponent"))
                };
                out.push(Formula::or(vec![
                    Formula::Neq(r.clone(), num_term(k)),
                    nmem(antecedent),
                    mem(num_term(b + k * a)),
                ]));
            }
            // (II)
            for m in m_..=(b + 2 * m_) {
                out.push(Formula::or(vec![
                    nmem(num_term(m)),
                    mem(TermExpr::from_tree(
                        &two_tree(&num(1), a, &num(1), m_ - a, m - m_).expect("exponents"),
                    )),
                ]));
            }
            // (III)
            out.push(Formula::or(vec![
                Formula::NotSub(one.clone(), r.clone()),
                nmem(opl_term(x_plus_term(r.clone(), kj), a, b).expect("exponent")),
                mem(two_term(r.clone(), a, one.clone(), m_ - a, b + (a - rj)).expect("exponents")),
            ]));
            // (IV)
            for m in m_..=(b + 2 * m_) {
                out.push(Formula::or(vec![
                    nmem(two_term(r.clone(), a, s.clone(), m_ - a, m).expect("exponents")),
                    mem(two_term(
                        x_plus_term(r.clone(), 1),
                        a,
                        x_plus_term(s.clone(), 1),
                        m_ - a,
                        m - m_,
                    )
                    .expect("exponents")),
                ]));
            }
            // (V)
            for m in 0..m_ {
                out.push(Formula::or(vec![
                    Formula::NotSub(s.clone(), r.clone()),
                    Formula::Eq(s.clone(), r.clone()),
                    nmem(two_term(x_plus_term(r.clone(), kj), a, s.clone(), m_ - a, m)
                        .expect("exponents")),
                    mem(two_term(r.clone(), a, x_plus_term(s.clone(), 1), m_ - a, m + (a - rj))
                        .expect("exponents")),
                ]));
            }
            // (VI)
            for m in 0..m_ {
                for k in 1..kj {
                    out.push(Formula::or(vec![
                        Formula::NotSub(one.clone(), r.clone()),
                        nmem(two_term(x_plus_term(r.clone(), k), a, r.clone(), m_ - a, m)
                            .expect("exponents")),
                        mem(two_term(r.clone(), a, r.clone(), m_ - a, m + k * a)
                            .expect("exponents")),
                    ]));
                }
            }
        }
        FamilyCase::Large { k: kj, r: rj } => {
            // (A)
            out.push(Formula::or(vec![
                Formula::Neq(r.clone(), one.clone()),
                nmem(TermExpr::from_tree(&opl_tree(&num(1), a, b).expect("exponent"))),
                mem(num_term(b + a)),
            ]));
            // (B)
            for m in m_..=(b + 2 * a) {
                out.push(Formula::or(vec![
                    nmem(num_term(m)),
                    mem(TermExpr::from_tree(&opl_tree(&num(1), m_, m - m_).expect("exponent"))),
                ]));
            }
            // (C)
            out.push(Formula::or(vec![
                Formula::NotSub(one.clone(), r.clone()),
                nmem(opl_term(x_plus_term(r.clone(), 1), a, b).expect("exponent")),
                mem(two_term(x_plus_term(r.clone(), kj), m_, r.clone(), a - m_, b + rj)
                    .expect("exponents")),
            ]));
            // (D)
            for m in m_..=(b + 2 * a) {
                out.push(Formula::or(vec![
                    nmem(two_term(r.clone(), m_, s.clone(), a - m_, m).expect("exponents")),
                    mem(two_term(x_plus_term(r.clone(), 1), m_, s.clone(), a - m_, m - m_)
                        .expect("exponents")),
                ]));
            }
            // (E)
            for m in 0..m_ {
                out.push(Formula::or(vec![
                    Formula::NotSub(one.clone(), s.clone()),
                    nmem(two_term(r.clone(), m_, x_plus_term(s.clone(), 1), a - m_, m)
                        .expect("exponents")),
                    mem(two_term(x_plus_term(r.clone(), kj - 1), m_, s.clone(), a - m_, m + rj)
                        .expect("exponents")),
                ]));
            }
            // (F)
            for m in 0..m_ {
                out.push(Formula::or(vec![
                    nmem(two_term(r.clone(), m_, one.clone(), a - m_, m).expect("exponents")),
                    mem(opl_term(x_plus_term(r.clone(), kj - 1), m_, m + rj).expect("exponent")),
                ]));
            }
            // (G)
            for m in m_..=(b + 2 * a) {
                out.push(Formula::or(vec![
                    nmem(opl_term(r.clone(), m_, m).expect("exponent")),
                    mem(opl_term(x_plus_term(r.clone(), 1), m_, m - m_).expect("exponent")),
                ]));
            }
        }
        FamilyCase::None => {}
    }
    out
}

/// Compile an instance into the sentence
/// `exists T . forall R sub T . forall S sub T . [ rewrite families, 3 in
/// T, and the residue-dispatched main rules ]`.
pub fn modulo_to_sigma102_lt(inst: &ModuloInstance) -> Result<Sentence> {
    let t = TermExpr::var("T");
    let r = TermExpr::var("R");
    let s = TermExpr::var("S");
    let m = inst.modulus();
    let two = num_term(2);
    let zero = num_term(0);

    let mut conjuncts = Vec::new();
    for j in 0..m {
        let (a, b) = inst.rule(j);
        conjuncts.extend(family_conjuncts(m, a, b, &r, &s, &t));
    }
    conjuncts.push(member(num_term(3), t.clone()));
    for j in 0..m {
        let (a, b) = inst.rule(j);
        // zero branch of the bound variable
        let cons0 = if a == 0 {
            TermExpr::from_tree(&u_tilde(b, m)?)
        } else {
            num_term(b)
        };
        conjuncts.push(Formula::or(vec![
            Formula::Neq(r.clone(), zero.clone()),
            not_member(num_term(j), t.clone()),
            Formula::Eq(num_term(j), two.clone()),
            member(cons0, t.clone()),
        ]));
        // positive branch
        let antecedent = opl_term(r.clone(), m, j)?;
        conjuncts.push(Formula::or(vec![
            Formula::Eq(r.clone(), zero.clone()),
            not_member(antecedent.clone(), t.clone()),
            Formula::Eq(antecedent, two.clone()),
            member(main_consequent_term(m, a, b, r.clone()), t.clone()),
        ]));
    }

    let formula = Formula::exists(
        "T",
        Formula::forall_b(
            "R",
            t.clone(),
            Formula::forall_b("S", t, Formula::and(conjuncts)),
        ),
    );
    Sentence::new(formula, Lang::T, Provenance::ModuloSigma102)
}

/// Consequent trees demanded by one member under every rule; used by the
/// witness closure.
pub(crate) fn rule_consequents(inst: &ModuloInstance, t: &Tree, out: &mut Vec<Tree>) {
    let m_ = inst.modulus();
    let two = num(2);
    // main rules
    for j in 0..m_ {
        let (a, b) = inst.rule(j);
        if t == &num(j) && t != &two {
            out.push(if a == 0 {
                u_tilde(b, m_).expect("modulus checked")
            } else {
                num(b)
            });
        }
        if t != &two {
            if let Some(r) = parse_opl(t, m_, j) {
                if !r.is_leaf() {
                    out.push(main_consequent_tree(m_, a, b, r));
                }
            }
        }
    }
    // rewrite families
    for j in 0..m_ {
        let (a, b) = inst.rule(j);
        match family_case(m_, a) {
            FamilyCase::Small { k: kj, r: rj } => {
                for k in 0..=kj {
                    let antecedent = if k == 0 {
                        num(b)
                    } else {
                        opl_tree(&num(k), a, b).expect("exponent")
                    };
                    if t == &antecedent {
                        out.push(num(b + k * a));
                    }
                }
                if let Some(v) = numeral_value(NumeralScheme::Pcp, t) {
                    if v >= m_ && v <= b + 2 * m_ {
                        out.push(two_tree(&num(1), a, &num(1), m_ - a, v - m_).expect("exponents"));
                    }
                }
                if let Some(x) = parse_opl(t, a, b) {
                    if let Some(r) = parse_x_plus(x, kj) {
                        if !r.is_leaf() {
                            out.push(
                                two_tree(r, a, &num(1), m_ - a, b + (a - rj)).expect("exponents"),
                            );
                        }
                    }
                }
                for m in m_..=(b + 2 * m_) {
                    if let Some((r, s)) = parse_two(t, a, m_ - a, m) {
                        out.push(
                            two_tree(&x_plus(r, 1), a, &x_plus(s, 1), m_ - a, m - m_)
                                .expect("exponents"),
                        );
                    }
                }
                for m in 0..m_ {
                    if let Some((x, s)) = parse_two(t, a, m_ - a, m) {
                        if let Some(r) = parse_x_plus(x, kj) {
                            if subterm(s, r) && s != r {
                                out.push(
                                    two_tree(r, a, &x_plus(s, 1), m_ - a, m + (a - rj))
                                        .expect("exponents"),
                                );
                            }
                        }
                    }
                    for k in 1..kj {
                        if let Some((x, y)) = parse_two(t, a, m_ - a, m) {
                            if !y.is_leaf() && x == &x_plus(y, k) {
                                out.push(
                                    two_tree(y, a, y, m_ - a, m + k * a).expect("exponents"),
                                );
                            }
                        }
                    }
                }
            }
            FamilyCase::Large { k: kj, r: rj } => {
                if t == &opl_tree(&num(1), a, b).expect("exponent") {
                    out.push(num(b + a));
                }
                if let Some(v) = numeral_value(NumeralScheme::Pcp, t) {
                    if v >= m_ && v <= b + 2 * a {
                        out.push(opl_tree(&num(1), m_, v - m_).expect("exponent"));
                    }
                }
                if let Some(x) = parse_opl(t, a, b) {
                    if let Some(r) = parse_x_plus(x, 1) {
                        if !r.is_leaf() {
                            out.push(
                                two_tree(&x_plus(r, kj), m_, r, a - m_, b + rj).expect("exponents"),
                            );
                        }
                    }
                }
                for m in m_..=(b + 2 * a) {
                    if let Some((r, s)) = parse_two(t, m_, a - m_, m) {
                        out.push(
                            two_tree(&x_plus(r, 1), m_, s, a - m_, m - m_).expect("exponents"),
                        );
                    }
                    if let Some(r) = parse_opl(t, m_, m) {
                        out.push(opl_tree(&x_plus(r, 1), m_, m - m_).expect("exponent"));
                    }
                }
                for m in 0..m_ {
                    if let Some((r, y)) = parse_two(t, m_, a - m_, m) {
                        if let Some(s) = parse_x_plus(y, 1) {
                            if !s.is_leaf() {
                                out.push(
                                    two_tree(&x_plus(r, kj - 1), m_, s, a - m_, m + rj)
                                        .expect("exponents"),
                                );
                            }
                        }
                        if y == &num(1) {
                            out.push(opl_tree(&x_plus(r, kj - 1), m_, m + rj).expect("exponent"));
                        }
                    }
                }
            }
            FamilyCase::None => {}
        }
    }
}

/// Forward closure of a seed set under all rules, capped by `budget`.
pub fn sigma102_closure(
    inst: &ModuloInstance,
    seed: BTreeSet<Tree>,
    budget: usize,
) -> Result<BTreeSet<Tree>> {
    let mut set = seed;
    loop {
        let mut fresh = Vec::new();
        for t in &set {
            let mut out = Vec::new();
            rule_consequents(inst, t, &mut out);
            for c in out {
                if !set.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(set);
        }
        set.extend(fresh);
        if set.len() > budget {
            return Err(Error::Domain(format!(
                "closure exceeded the element budget of {budget}"
            )));
        }
    }
}


/// Debug hook exposing the rule matcher; not part of the public surface.
#[doc(hidden)]
pub fn rule_consequents_for_debug(inst: &ModuloInstance, t: &Tree, out: &mut Vec<Tree>) {
    rule_consequents(inst, t, out);
}
