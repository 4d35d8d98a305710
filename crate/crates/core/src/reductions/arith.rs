//! Existential interpretation of natural-number arithmetic: numbers live
//! in a frame class, addition is a base substitution, and multiplication
//! goes through the computation-tree class.

use super::{Provenance, Sentence};
use crate::encodings::{
    fraction, m_class_formula_term, FractionParams, MultParams,
};
use crate::error::{Error, Result};
use crate::formula::{Formula, Lang, TermExpr};
use crate::tree::Tree;

/// The fixed parameter set of the interpretation.
#[derive(Debug, Clone)]
pub struct ArithParams {
    pub zero: Tree,
    pub side: Tree,
    pub mult: MultParams,
}

impl Default for ArithParams {
    fn default() -> Self {
        let zero = Tree::pair(Tree::Leaf, Tree::chain(2));
        let side = Tree::chain(5);
        let mult = MultParams::new(
            Tree::pair(Tree::Leaf, Tree::chain(4)),
            Tree::pair(Tree::Leaf, Tree::chain(5)),
            Tree::pair(Tree::Leaf, Tree::chain(3)),
            side.clone(),
            side.clone(),
            1, // placeholder; the factor enters the formulas as a term
        )
        .expect("fixed parameters satisfy the side conditions");
        ArithParams { zero, side, mult }
    }
}

impl ArithParams {
    pub fn number_params(&self) -> FractionParams {
        FractionParams::new(self.zero.clone(), vec![self.side.clone()]).expect("fixed parameters")
    }

    /// The tree standing for the number `n`.
    pub fn number(&self, n: u64) -> Tree {
        if n == 0 {
            self.zero.clone()
        } else {
            fraction(n, &self.number_params()).expect("n >= 1")
        }
    }

    /// Decode a domain tree back to its number.
    pub fn number_value(&self, t: &Tree) -> Option<u64> {
        if t == &self.zero {
            Some(0)
        } else {
            crate::encodings::fraction_value(t, &self.number_params())
        }
    }
}

/// Domain formula: the zero tree or a member of the frame class.
pub fn arith_domain_formula(p: &ArithParams, x: TermExpr) -> Formula {
    crate::encodings::n_class_or_anchor_formula(x, &p.number_params())
}

/// `x + y = z`: all three in the domain and `z = y[zero -> x]`.
pub fn arith_plus_formula(p: &ArithParams, x: TermExpr, y: TermExpr, z: TermExpr) -> Formula {
    let zero = TermExpr::from_tree(&p.zero);
    Formula::and(vec![
        arith_domain_formula(p, x.clone()),
        arith_domain_formula(p, y.clone()),
        arith_domain_formula(p, z.clone()),
        Formula::Eq(z, TermExpr::subst(y, zero, x)),
    ])
}

/// `x * y = z` with inner existentials named under `prefix`: either a zero
/// case, or a computation tree whose last entry pairs `y` with `z` in the
/// two recoded frame classes.
pub fn arith_times_formula(
    p: &ArithParams,
    x: TermExpr,
    y: TermExpr,
    z: TermExpr,
    prefix: &str,
) -> Formula {
    let zero = TermExpr::from_tree(&p.zero);
    let alpha = TermExpr::from_tree(&p.mult.alpha);
    let beta = TermExpr::from_tree(&p.mult.beta);
    let n_name = format!("{prefix}.n");
    let v_name = format!("{prefix}.v");
    let w_name = format!("{prefix}.w");
    let n = TermExpr::var(n_name.clone());
    let v = TermExpr::var(v_name.clone());
    let w = TermExpr::var(w_name.clone());
    let mult_member = m_class_formula_term(
        w.clone(),
        n.clone(),
        &p.mult,
        &format!("{prefix}.L"),
        &format!("{prefix}.R"),
    );
    let phi = Formula::exists(
        n_name,
        Formula::exists(
            v_name,
            Formula::exists(
                w_name,
                Formula::and(vec![
                    Formula::Eq(n, TermExpr::subst(x.clone(), zero.clone(), beta.clone())),
                    mult_member,
                    Formula::Eq(
                        w,
                        TermExpr::pair(
                            v,
                            TermExpr::pair(
                                TermExpr::subst(y.clone(), zero.clone(), alpha),
                                TermExpr::subst(z.clone(), zero.clone(), beta),
                            ),
                        ),
                    ),
                ]),
            ),
        ),
    );
    Formula::and(vec![
        arith_domain_formula(p, x.clone()),
        arith_domain_formula(p, y.clone()),
        arith_domain_formula(p, z.clone()),
        Formula::or(vec![
            Formula::and(vec![Formula::Eq(x.clone(), zero.clone()), Formula::Eq(z.clone(), zero.clone())]),
            Formula::and(vec![Formula::Eq(y.clone(), zero.clone()), Formula::Eq(z.clone(), zero.clone())]),
            Formula::and(vec![Formula::Neq(x, zero.clone()), Formula::Neq(y, zero), phi]),
        ]),
    ])
}

/// An atom of the accepted arithmetic input form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithAtom {
    /// x + y = z
    PlusEq(String, String, String),
    /// x * y = z
    TimesEq(String, String, String),
    /// x = 0
    IsZero(String),
    /// x = 1
    IsOne(String),
    /// x = y
    VarEq(String, String),
}

/// A purely existential conjunctive arithmetic sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithSentence {
    pub vars: Vec<String>,
    pub atoms: Vec<ArithAtom>,
}

impl ArithSentence {
    pub fn new(vars: Vec<String>, atoms: Vec<ArithAtom>) -> Result<Self> {
        let check = |v: &String| -> Result<()> {
            if vars.contains(v) {
                Ok(())
            } else {
                Err(Error::Instance(format!("atom mentions unquantified `{v}`")))
            }
        };
        for atom in &atoms {
            match atom {
                ArithAtom::PlusEq(a, b, c) | ArithAtom::TimesEq(a, b, c) => {
                    check(a)?;
                    check(b)?;
                    check(c)?;
                }
                ArithAtom::IsZero(a) | ArithAtom::IsOne(a) => check(a)?,
                ArithAtom::VarEq(a, b) => {
                    check(a)?;
                    check(b)?;
                }
            }
        }
        Ok(ArithSentence { vars, atoms })
    }
}

/// Translate an existential conjunctive arithmetic sentence into an
/// existential sentence over the substitution language: variables are
/// relativized to the domain and every atom becomes its defining formula.
pub fn diophantine_to_existential(s: &ArithSentence) -> Result<Sentence> {
    let p = ArithParams::default();
    let mut conjuncts: Vec<Formula> = s
        .vars
        .iter()
        .map(|v| arith_domain_formula(&p, TermExpr::var(v.clone())))
        .collect();
    for (i, atom) in s.atoms.iter().enumerate() {
        let f = match atom {
            ArithAtom::PlusEq(a, b, c) => arith_plus_formula(
                &p,
                TermExpr::var(a.clone()),
                TermExpr::var(b.clone()),
                TermExpr::var(c.clone()),
            ),
            ArithAtom::TimesEq(a, b, c) => arith_times_formula(
                &p,
                TermExpr::var(a.clone()),
                TermExpr::var(b.clone()),
                TermExpr::var(c.clone()),
                &format!("t{i}"),
            ),
            ArithAtom::IsZero(a) => {
                Formula::Eq(TermExpr::var(a.clone()), TermExpr::from_tree(&p.number(0)))
            }
            ArithAtom::IsOne(a) => {
                Formula::Eq(TermExpr::var(a.clone()), TermExpr::from_tree(&p.number(1)))
            }
            ArithAtom::VarEq(a, b) => {
                Formula::Eq(TermExpr::var(a.clone()), TermExpr::var(b.clone()))
            }
        };
        conjuncts.push(f);
    }
    let mut formula = Formula::and(conjuncts);
    for v in s.vars.iter().rev() {
        formula = Formula::exists(v.clone(), formula);
    }
    Sentence::new(formula, Lang::Bt, Provenance::DiophantineExistential)
}
