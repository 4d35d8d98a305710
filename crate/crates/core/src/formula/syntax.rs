use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// The three languages. `TMinus` has only the subtree relation, `T` adds the
/// leaf constant and the pairing function, `Bt` trades the subtree relation
/// for the ternary substitution operator (the relation stays available as
/// sugar).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lang {
    TMinus,
    T,
    Bt,
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lang::TMinus => write!(f, "T-"),
            Lang::T => write!(f, "T"),
            Lang::Bt => write!(f, "BT"),
        }
    }
}

/// A term with variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermExpr {
    Var(String),
    Bot,
    Pair(Box<TermExpr>, Box<TermExpr>),
    /// `body[from -> to]`, only meaningful under the BT language.
    Subst {
        body: Box<TermExpr>,
        from: Box<TermExpr>,
        to: Box<TermExpr>,
    },
}

impl TermExpr {
    pub fn var(name: impl Into<String>) -> TermExpr {
        TermExpr::Var(name.into())
    }

    pub fn pair(l: TermExpr, r: TermExpr) -> TermExpr {
        TermExpr::Pair(Box::new(l), Box::new(r))
    }

    pub fn subst(body: TermExpr, from: TermExpr, to: TermExpr) -> TermExpr {
        TermExpr::Subst {
            body: Box::new(body),
            from: Box::new(from),
            to: Box::new(to),
        }
    }

    /// Fold a sequence of substitutions left to right:
    /// `body[f1->t1][f2->t2]...`.
    pub fn subst_chain(body: TermExpr, steps: impl IntoIterator<Item = (TermExpr, TermExpr)>) -> TermExpr {
        steps
            .into_iter()
            .fold(body, |acc, (from, to)| TermExpr::subst(acc, from, to))
    }

    /// Embed a closed tree as a term.
    pub fn from_tree(t: &Tree) -> TermExpr {
        match t {
            Tree::Leaf => TermExpr::Bot,
            Tree::Pair(l, r) => TermExpr::pair(TermExpr::from_tree(l), TermExpr::from_tree(r)),
        }
    }

    /// Constructor-only terms convert back to trees directly.
    pub fn as_tree(&self) -> Option<Tree> {
        match self {
            TermExpr::Bot => Some(Tree::Leaf),
            TermExpr::Pair(l, r) => Some(Tree::pair(l.as_tree()?, r.as_tree()?)),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            TermExpr::Var(v) => {
                out.insert(v.clone());
            }
            TermExpr::Bot => {}
            TermExpr::Pair(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            TermExpr::Subst { body, from, to } => {
                body.collect_vars(out);
                from.collect_vars(out);
                to.collect_vars(out);
            }
        }
    }

    pub fn mentions_var(&self, name: &str) -> bool {
        match self {
            TermExpr::Var(v) => v == name,
            TermExpr::Bot => false,
            TermExpr::Pair(l, r) => l.mentions_var(name) || r.mentions_var(name),
            TermExpr::Subst { body, from, to } => {
                body.mentions_var(name) || from.mentions_var(name) || to.mentions_var(name)
            }
        }
    }

    fn has_subst(&self) -> bool {
        match self {
            TermExpr::Subst { .. } => true,
            TermExpr::Pair(l, r) => l.has_subst() || r.has_subst(),
            _ => false,
        }
    }

    fn has_constructor(&self) -> bool {
        match self {
            TermExpr::Var(_) => false,
            _ => true,
        }
    }
}

/// Negation-normal-form sigma-formulas. Negation exists only in the literals
/// (`Neq`, `NotSub`); universal quantifiers are always bounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(TermExpr, TermExpr),
    Neq(TermExpr, TermExpr),
    Sub(TermExpr, TermExpr),
    NotSub(TermExpr, TermExpr),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    ExistsB {
        var: String,
        bound: TermExpr,
        body: Box<Formula>,
    },
    ForallB {
        var: String,
        bound: TermExpr,
        body: Box<Formula>,
    },
    Exists {
        var: String,
        body: Box<Formula>,
    },
}

impl Formula {
    /// n-ary conjunction, flattening nested conjunctions.
    pub fn and(parts: Vec<Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::And(out)
        }
    }

    /// n-ary disjunction, flattening nested disjunctions.
    pub fn or(parts: Vec<Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::Or(out)
        }
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists {
            var: var.into(),
            body: Box::new(body),
        }
    }

    pub fn exists_b(var: impl Into<String>, bound: TermExpr, body: Formula) -> Formula {
        Formula::ExistsB {
            var: var.into(),
            bound,
            body: Box::new(body),
        }
    }

    pub fn forall_b(var: impl Into<String>, bound: TermExpr, body: Formula) -> Formula {
        Formula::ForallB {
            var: var.into(),
            bound,
            body: Box::new(body),
        }
    }
}

/// Quantifier counts of a sigma-formula: `n` unbounded existentials, `m`
/// bounded existentials, `k` bounded universals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SigmaProfile {
    pub unbounded_exists: usize,
    pub bounded_exists: usize,
    pub bounded_forall: usize,
}

impl fmt::Display for SigmaProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            self.unbounded_exists, self.bounded_exists, self.bounded_forall
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub profile: SigmaProfile,
    pub is_existential: bool,
    pub is_sigma: bool,
    /// Minimal language whose symbols cover the formula.
    pub language: Lang,
}

/// Count quantifier occurrences syntactically and infer the minimal language.
pub fn classify(f: &Formula) -> Classification {
    let mut profile = SigmaProfile::default();
    let mut has_subst = false;
    let mut has_constructor = false;
    walk(f, &mut profile, &mut has_subst, &mut has_constructor);

    fn walk(f: &Formula, p: &mut SigmaProfile, subst: &mut bool, cons: &mut bool) {
        let mut term = |t: &TermExpr| {
            *subst |= t.has_subst();
            *cons |= t.has_constructor();
        };
        match f {
            Formula::Eq(a, b) | Formula::Neq(a, b) | Formula::Sub(a, b) | Formula::NotSub(a, b) => {
                term(a);
                term(b);
            }
            Formula::And(fs) | Formula::Or(fs) => {
                for g in fs {
                    walk(g, p, subst, cons);
                }
            }
            Formula::ExistsB { bound, body, .. } => {
                p.bounded_exists += 1;
                term(bound);
                walk(body, p, subst, cons);
            }
            Formula::ForallB { bound, body, .. } => {
                p.bounded_forall += 1;
                term(bound);
                walk(body, p, subst, cons);
            }
            Formula::Exists { body, .. } => {
                p.unbounded_exists += 1;
                walk(body, p, subst, cons);
            }
        }
    }

    let language = if has_subst {
        Lang::Bt
    } else if has_constructor {
        Lang::T
    } else {
        Lang::TMinus
    };
    Classification {
        profile,
        is_existential: profile.bounded_exists == 0 && profile.bounded_forall == 0,
        is_sigma: validate(f).is_ok(),
        language,
    }
}

pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    let mut free = BTreeSet::new();
    let mut bound = Vec::new();
    collect_free(f, &mut bound, &mut free);
    free
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, free: &mut BTreeSet<String>) {
    let term = |t: &TermExpr, bound: &Vec<String>, free: &mut BTreeSet<String>| {
        let mut vars = BTreeSet::new();
        t.collect_vars(&mut vars);
        for v in vars {
            if !bound.contains(&v) {
                free.insert(v);
            }
        }
    };
    match f {
        Formula::Eq(a, b) | Formula::Neq(a, b) | Formula::Sub(a, b) | Formula::NotSub(a, b) => {
            term(a, bound, free);
            term(b, bound, free);
        }
        Formula::And(fs) | Formula::Or(fs) => {
            for g in fs {
                collect_free(g, bound, free);
            }
        }
        Formula::ExistsB { var, bound: t, body } | Formula::ForallB { var, bound: t, body } => {
            term(t, bound, free);
            bound.push(var.clone());
            collect_free(body, bound, free);
            bound.pop();
        }
        Formula::Exists { var, body } => {
            bound.push(var.clone());
            collect_free(body, bound, free);
            bound.pop();
        }
    }
}

/// Structural well-formedness: a bounded quantifier's variable must not
/// occur in its bound term.
pub fn validate(f: &Formula) -> Result<()> {
    match f {
        Formula::Eq(..) | Formula::Neq(..) | Formula::Sub(..) | Formula::NotSub(..) => Ok(()),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().try_for_each(validate),
        Formula::ExistsB { var, bound, body } | Formula::ForallB { var, bound, body } => {
            if bound.mentions_var(var) {
                return Err(Error::InvalidFormula(format!(
                    "bound variable `{var}` occurs in its own bound term"
                )));
            }
            validate(body)
        }
        Formula::Exists { body, .. } => validate(body),
    }
}

/// Check that every symbol of `f` is admitted by the declared language tag.
/// Subtree literals are accepted under every tag (they are native in `T-`
/// and `T` and definable sugar in `BT`).
pub fn check_language(f: &Formula, lang: Lang) -> Result<()> {
    fn term_ok(t: &TermExpr, lang: Lang) -> Result<()> {
        match t {
            TermExpr::Var(_) => Ok(()),
            TermExpr::Bot | TermExpr::Pair(..) if lang == Lang::TMinus => Err(Error::Language(
                "constant and pairing symbols are not part of the subtree-only language".into(),
            )),
            TermExpr::Bot => Ok(()),
            TermExpr::Pair(l, r) => {
                term_ok(l, lang)?;
                term_ok(r, lang)
            }
            TermExpr::Subst { .. } if lang != Lang::Bt => Err(Error::Language(
                "the substitution operator is only part of the BT language".into(),
            )),
            TermExpr::Subst { body, from, to } => {
                term_ok(body, lang)?;
                term_ok(from, lang)?;
                term_ok(to, lang)
            }
        }
    }
    match f {
        Formula::Eq(a, b) | Formula::Neq(a, b) | Formula::Sub(a, b) | Formula::NotSub(a, b) => {
            term_ok(a, lang)?;
            term_ok(b, lang)
        }
        Formula::And(fs) | Formula::Or(fs) => fs.iter().try_for_each(|g| check_language(g, lang)),
        Formula::ExistsB { bound, body, .. } | Formula::ForallB { bound, body, .. } => {
            term_ok(bound, lang)?;
            check_language(body, lang)
        }
        Formula::Exists { body, .. } => check_language(body, lang),
    }
}

/// Replace subtree literals by their substitution-operator definition:
/// `x sub t` becomes `t[x -> <x,x>] != t` and `x !sub t` becomes
/// `t[x -> <x,x>] = t`. Only legal for BT-tagged formulas; bounded
/// quantifiers stay as native nodes.
pub fn desugar_sub_bt(f: &Formula, lang: Lang) -> Result<Formula> {
    if lang != Lang::Bt {
        return Err(Error::Language(format!(
            "desugaring the subtree relation requires the BT language, got {lang}"
        )));
    }
    fn rec(f: &Formula) -> Formula {
        match f {
            Formula::Eq(..) | Formula::Neq(..) => f.clone(),
            Formula::Sub(x, t) => Formula::Neq(
                TermExpr::subst(t.clone(), x.clone(), TermExpr::pair(x.clone(), x.clone())),
                t.clone(),
            ),
            Formula::NotSub(x, t) => Formula::Eq(
                TermExpr::subst(t.clone(), x.clone(), TermExpr::pair(x.clone(), x.clone())),
                t.clone(),
            ),
            Formula::And(fs) => Formula::And(fs.iter().map(rec).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(rec).collect()),
            Formula::ExistsB { var, bound, body } => Formula::ExistsB {
                var: var.clone(),
                bound: bound.clone(),
                body: Box::new(rec(body)),
            },
            Formula::ForallB { var, bound, body } => Formula::ForallB {
                var: var.clone(),
                bound: bound.clone(),
                body: Box::new(rec(body)),
            },
            Formula::Exists { var, body } => Formula::Exists {
                var: var.clone(),
                body: Box::new(rec(body)),
            },
        }
    }
    Ok(rec(f))
}

/// Push a negation down to the literals, dualizing connectives and bounded
/// quantifiers. Fails on unbounded existentials, whose negation would leave
/// the sigma fragment.
pub fn nnf_negate(f: &Formula) -> Result<Formula> {
    match f {
        Formula::Eq(a, b) => Ok(Formula::Neq(a.clone(), b.clone())),
        Formula::Neq(a, b) => Ok(Formula::Eq(a.clone(), b.clone())),
        Formula::Sub(a, b) => Ok(Formula::NotSub(a.clone(), b.clone())),
        Formula::NotSub(a, b) => Ok(Formula::Sub(a.clone(), b.clone())),
        Formula::And(fs) => Ok(Formula::Or(fs.iter().map(nnf_negate).collect::<Result<_>>()?)),
        Formula::Or(fs) => Ok(Formula::And(fs.iter().map(nnf_negate).collect::<Result<_>>()?)),
        Formula::ExistsB { var, bound, body } => Ok(Formula::ForallB {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(nnf_negate(body)?),
        }),
        Formula::ForallB { var, bound, body } => Ok(Formula::ExistsB {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(nnf_negate(body)?),
        }),
        Formula::Exists { .. } => Err(Error::InvalidFormula(
            "cannot negate an unbounded existential inside the sigma fragment".into(),
        )),
    }
}

/// Quantifier-free set membership: `x in_alpha y` is
/// `<x,alpha> sub y  and  alpha !sub x`.
pub fn in_alpha(x: TermExpr, alpha: TermExpr, y: TermExpr) -> Formula {
    Formula::And(vec![
        Formula::Sub(TermExpr::pair(x.clone(), alpha.clone()), y),
        Formula::NotSub(alpha, x),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> Formula {
        Formula::Eq(TermExpr::Bot, TermExpr::pair(TermExpr::Bot, TermExpr::Bot))
    }

    #[test]
    fn classify_profiles() {
        let f = Formula::exists(
            "x",
            Formula::forall_b(
                "y",
                TermExpr::var("x"),
                Formula::forall_b("z", TermExpr::var("x"), qf()),
            ),
        );
        let c = classify(&f);
        assert_eq!(c.profile.unbounded_exists, 1);
        assert_eq!(c.profile.bounded_exists, 0);
        assert_eq!(c.profile.bounded_forall, 2);
        assert!(!c.is_existential);
        assert!(c.is_sigma);
        assert_eq!(c.language, Lang::T);

        let c = classify(&qf());
        assert_eq!(
            (c.profile.unbounded_exists, c.profile.bounded_exists, c.profile.bounded_forall),
            (0, 0, 0)
        );
        assert!(c.is_existential);
    }

    #[test]
    fn minimal_language() {
        let f = Formula::Sub(TermExpr::var("x"), TermExpr::var("y"));
        assert_eq!(classify(&f).language, Lang::TMinus);
        let f = Formula::Eq(
            TermExpr::var("x"),
            TermExpr::subst(TermExpr::var("x"), TermExpr::Bot, TermExpr::Bot),
        );
        assert_eq!(classify(&f).language, Lang::Bt);
    }

    #[test]
    fn validate_bound_var() {
        let bad = Formula::exists_b("x", TermExpr::var("x"), qf());
        assert!(validate(&bad).is_err());
        let good = Formula::exists_b("x", TermExpr::var("y"), qf());
        assert!(validate(&good).is_ok());
    }

    #[test]
    fn desugar_examples() {
        let x = TermExpr::var("x");
        let t = TermExpr::var("t");
        let f = Formula::Sub(x.clone(), t.clone());
        let d = desugar_sub_bt(&f, Lang::Bt).unwrap();
        assert_eq!(
            d,
            Formula::Neq(
                TermExpr::subst(t.clone(), x.clone(), TermExpr::pair(x.clone(), x.clone())),
                t.clone()
            )
        );
        assert!(desugar_sub_bt(&f, Lang::T).is_err());
        assert_eq!(desugar_sub_bt(&qf(), Lang::Bt).unwrap(), qf());
        // desugaring adds no quantifiers
        let g = Formula::exists("x", Formula::Sub(x.clone(), t.clone()));
        let before = classify(&g).profile;
        let after = classify(&desugar_sub_bt(&g, Lang::Bt).unwrap()).profile;
        assert_eq!(before, after);
    }

    #[test]
    fn negate_duality_shapes() {
        let f = Formula::forall_b("y", TermExpr::var("x"), qf());
        let n = nnf_negate(&f).unwrap();
        assert!(matches!(n, Formula::ExistsB { .. }));
        assert!(nnf_negate(&Formula::exists("x", qf())).is_err());
    }
}
