//! Modulo problem to a one-existential, one-bounded-universal sentence
//! over the substitution language: a witness set of numerals must contain
//! 3 and be closed under the residue-dispatched affine map until 2.

use super::{member, not_member, Provenance, Sentence};
use crate::encodings::{linpoly_bt, numeral, NumeralScheme};
use crate::error::Result;
use crate::formula::{Formula, Lang, TermExpr};
use crate::problems::ModuloInstance;

/// Compile an instance into the sentence
/// `exists T . forall z sub T . [ 3 in T and for every residue j:
/// (M z + j in T and M z + j != 2) implies A_j z + B_j in T ]`.
pub fn modulo_to_sigma101(inst: &ModuloInstance) -> Result<Sentence> {
    let t = TermExpr::var("T");
    let z = TermExpr::var("z");
    let m = inst.modulus();
    let two = TermExpr::from_tree(&numeral(NumeralScheme::Mod, 2));

    let mut conjuncts = vec![member(
        TermExpr::from_tree(&numeral(NumeralScheme::Mod, 3)),
        t.clone(),
    )];
    for j in 0..m {
        let (a, b) = inst.rule(j);
        let antecedent = linpoly_bt(m, z.clone(), j);
        let consequent = linpoly_bt(a, z.clone(), b);
        conjuncts.push(Formula::or(vec![
            not_member(antecedent.clone(), t.clone()),
            Formula::Eq(antecedent, two.clone()),
            member(consequent, t.clone()),
        ]));
    }

    let formula = Formula::exists(
        "T",
        Formula::forall_b("z", t, Formula::and(conjuncts)),
    );
    Sentence::new(formula, Lang::Bt, Provenance::ModuloSigma101)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{verify_witness, EvalCtx};
    use crate::problems::{modulo_trajectory, witness_modulo101};

    #[test]
    fn profile_is_one_one() {
        let inst = ModuloInstance::new(2, vec![(1, 0), (6, 4)]).unwrap();
        let s = modulo_to_sigma101(&inst).unwrap();
        assert_eq!(s.profile.unbounded_exists, 1);
        assert_eq!(s.profile.bounded_exists, 0);
        assert_eq!(s.profile.bounded_forall, 1);
        assert_eq!(s.language, Lang::Bt);
    }

    #[test]
    fn collatz_witness_verifies() {
        let inst = ModuloInstance::new(2, vec![(1, 0), (6, 4)]).unwrap();
        let s = modulo_to_sigma101(&inst).unwrap();
        let traj = modulo_trajectory(&inst, 20).unwrap();
        let w = witness_modulo101(&inst, &traj).unwrap();
        let mut ctx = EvalCtx::new();
        assert!(verify_witness(&mut ctx, &s.formula, &w).unwrap());
    }

    #[test]
    fn degenerate_one_step_instance() {
        // the odd rule maps everything to 2 immediately
        let inst = ModuloInstance::new(2, vec![(1, 0), (0, 2)]).unwrap();
        let s = modulo_to_sigma101(&inst).unwrap();
        let traj = modulo_trajectory(&inst, 5).unwrap();
        assert_eq!(traj, vec![3, 2]);
        let w = witness_modulo101(&inst, &traj).unwrap();
        let mut ctx = EvalCtx::new();
        assert!(verify_witness(&mut ctx, &s.formula, &w).unwrap());
    }
}
