//! Equation normal form: every existential sentence over the substitution
//! language splits into finitely many single-equation sentences, one per
//! disjunct of the matrix, whose disjunction is equivalent to the input.

use super::{Provenance, Sentence};
use crate::error::{Error, Result};
use crate::formula::{desugar_sub_bt, Formula, Lang, TermExpr};

/// A conjunction of equations over terms, one DNF disjunct.
type Cube = Vec<(TermExpr, TermExpr)>;

/// `s != t` is equivalent to this two-equation disjunction: one side stays
/// fixed under marking the other inside it.
fn disequality_cubes(s: &TermExpr, t: &TermExpr) -> [Cube; 2] {
    let mark = |a: &TermExpr, b: &TermExpr| {
        TermExpr::subst(a.clone(), b.clone(), TermExpr::pair(b.clone(), b.clone()))
    };
    [
        vec![(mark(t, s), t.clone())],
        vec![(mark(s, t), s.clone())],
    ]
}

fn matrix_to_cubes(f: &Formula) -> Result<Vec<Cube>> {
    match f {
        Formula::Eq(a, b) => Ok(vec![vec![(a.clone(), b.clone())]]),
        Formula::Neq(a, b) => Ok(disequality_cubes(a, b).into_iter().collect()),
        Formula::Or(fs) => {
            let mut out = Vec::new();
            for g in fs {
                out.extend(matrix_to_cubes(g)?);
            }
            Ok(out)
        }
        Formula::And(fs) => {
            let mut acc: Vec<Cube> = vec![Vec::new()];
            for g in fs {
                let cubes = matrix_to_cubes(g)?;
                let mut next = Vec::new();
                for prefix in &acc {
                    for cube in &cubes {
                        let mut merged = prefix.clone();
                        merged.extend(cube.iter().cloned());
                        next.push(merged);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        Formula::Sub(..) | Formula::NotSub(..) => Err(Error::InvalidFormula(
            "subtree literals must be desugared before normalization".into(),
        )),
        _ => Err(Error::InvalidFormula(
            "equation normal form requires an existential matrix".into(),
        )),
    }
}

/// Merge a cube into a single equation by pairing.
fn merge_cube(cube: &Cube) -> (TermExpr, TermExpr) {
    let mut it = cube.iter().cloned();
    let (mut s, mut t) = it.next().expect("cubes are nonempty");
    for (a, b) in it {
        s = TermExpr::pair(s, a);
        t = TermExpr::pair(t, b);
    }
    (s, t)
}

fn strip_exists(f: &Formula, vars: &mut Vec<String>) -> Formula {
    match f {
        Formula::Exists { var, body } => {
            vars.push(var.clone());
            strip_exists(body, vars)
        }
        Formula::And(fs) => Formula::And(fs.iter().map(|g| strip_exists(g, vars)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| strip_exists(g, vars)).collect()),
        other => other.clone(),
    }
}

/// Pull every disjunct of the matrix into its own sentence
/// `exists xs . [ s = t ]`. Subtree literals are desugared first; bounded
/// quantifiers are rejected.
pub fn h10_normalize(sentence: &Sentence) -> Result<Vec<Sentence>> {
    if sentence.profile.bounded_exists != 0 || sentence.profile.bounded_forall != 0 {
        return Err(Error::InvalidFormula(
            "equation normal form requires a purely existential sentence".into(),
        ));
    }
    let desugared = desugar_sub_bt(&sentence.formula, Lang::Bt)?;
    // quantifier prefixes commute with the matrix here: names are unique,
    // so hoisting every existential to the front preserves meaning
    let mut vars = Vec::new();
    let matrix = strip_exists(&desugared, &mut vars);
    let cubes = matrix_to_cubes(&matrix)?;
    let mut out = Vec::new();
    for cube in &cubes {
        let (s, t) = merge_cube(cube);
        let mut used = s.free_vars();
        used.extend(t.free_vars());
        let mut formula = Formula::Eq(s, t);
        for v in vars.iter().rev() {
            if used.contains(v) {
                formula = Formula::exists(v.clone(), formula);
            }
        }
        out.push(Sentence::new(formula, Lang::Bt, Provenance::H10Normal)?);
    }
    Ok(out)
}

/// The cube disjunction of a quantifier-free matrix, for equivalence
/// checks: the matrix holds under an assignment iff some cube does.
pub fn matrix_cubes_for_tests(f: &Formula) -> Result<Vec<Formula>> {
    Ok(matrix_to_cubes(f)?
        .iter()
        .map(|cube| {
            let (s, t) = merge_cube(cube);
            Formula::Eq(s, t)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{check, eval_decidable, Assignment, EvalCtx, Verdict};
    use crate::formula::parse_formula;

    fn sentence(text: &str) -> Sentence {
        Sentence::new(
            parse_formula(text).unwrap(),
            Lang::Bt,
            Provenance::DiophantineExistential,
        )
        .unwrap()
    }

    #[test]
    fn tautology_normalizes_to_a_true_equation() {
        let s = sentence("exists x . x = x");
        let out = h10_normalize(&s).unwrap();
        assert_eq!(out.len(), 1);
        let mut ctx = EvalCtx::new();
        assert_eq!(check(&mut ctx, &out[0].formula, 2).unwrap(), Verdict::True);
    }

    #[test]
    fn conjunction_merges_into_one_equation() {
        let s = sentence("exists x . and(x = _, _ = _)");
        let out = h10_normalize(&s).unwrap();
        assert_eq!(out.len(), 1);
        match &out[0].formula {
            Formula::Exists { body, .. } => {
                assert!(matches!(**body, Formula::Eq(TermExpr::Pair(..), TermExpr::Pair(..))))
            }
            other => panic!("expected a single quantified equation, got {other:?}"),
        }
    }

    #[test]
    fn disequality_resolves_via_the_second_disjunct() {
        let s = sentence("_ != <_,_>");
        let out = h10_normalize(&s).unwrap();
        assert_eq!(out.len(), 2);
        let mut ctx = EvalCtx::new();
        let a = Assignment::new();
        let first = eval_decidable(&mut ctx, &out[0].formula, &a).unwrap();
        let second = eval_decidable(&mut ctx, &out[1].formula, &a).unwrap();
        assert!(!first);
        assert!(second);
    }

    #[test]
    fn pointwise_equivalence_on_a_matrix() {
        let matrix = parse_formula("or(and(x = y, x != _), subst(y,x,<x,x>) = y)").unwrap();
        let desugared = desugar_sub_bt(&matrix, Lang::Bt).unwrap();
        let cubes = matrix_cubes_for_tests(&desugared).unwrap();
        let mut ctx = EvalCtx::new();
        for nx in 1..=3u64 {
            for ny in 1..=3u64 {
                for x in crate::tree::enumerate(nx).unwrap() {
                    for y in crate::tree::enumerate(ny).unwrap() {
                        let mut a = Assignment::new();
                        a.insert("x".into(), x.clone());
                        a.insert("y".into(), y.clone());
                        let direct = eval_decidable(&mut ctx, &desugared, &a).unwrap();
                        let via = cubes
                            .iter()
                            .any(|c| eval_decidable(&mut ctx, c, &a).unwrap());
                        assert_eq!(direct, via);
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_quantifiers_are_rejected() {
        let f = parse_formula("exists x . forall y sub x . y = y").unwrap();
        let s = Sentence::new(f, Lang::Bt, Provenance::DiophantineExistential).unwrap();
        assert!(h10_normalize(&s).is_err());
    }
}
