//! Witness builders: for every compiler, turn a known solution into the
//! named assignment its sentence verifies against.

use std::collections::BTreeSet;

use crate::encodings::{build_p2_element, build_p_element, numeral, u_tilde, NumeralScheme};
use crate::error::{Error, Result};
use crate::eval::Assignment;
use crate::problems::{modulo_step, ModuloInstance, PCPInstance};
use crate::reductions::{membership_anchor, side_params, sigma102_closure, word_tree};
use crate::tree::{subtrees, Tree};

fn encode_members(members: &BTreeSet<Tree>) -> Result<Tree> {
    crate::encodings::encode_set(members, &membership_anchor())
}

/// Witness for the pairing-language correspondence sentence: the set of
/// all prefix pairs of the solution.
pub fn witness_sigma102(inst: &PCPInstance, solution: &[usize]) -> Result<Assignment> {
    if !inst.is_solution(solution) {
        return Err(Error::Witness("index sequence is not a solution".into()));
    }
    let mut members = BTreeSet::new();
    for j in 1..=solution.len() {
        let (a, b) = inst.replay(&solution[..j])?;
        members.insert(Tree::pair(word_tree(&a), word_tree(&b)));
    }
    let mut w = Assignment::new();
    w.insert("T".into(), encode_members(&members)?);
    Ok(w)
}

fn check_trajectory(inst: &ModuloInstance, trajectory: &[u64]) -> Result<()> {
    if trajectory.first() != Some(&3) {
        return Err(Error::Witness("trajectory must start at 3".into()));
    }
    if trajectory.last() != Some(&2) {
        return Err(Error::Witness("trajectory must end at 2".into()));
    }
    for pair in trajectory.windows(2) {
        if pair[0] == 2 || modulo_step(inst, pair[0]) != pair[1] {
            return Err(Error::Witness(format!(
                "trajectory step {} -> {} does not follow the map",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

/// Witness for the substitution-language modulo sentence: the set of the
/// trajectory numerals.
pub fn witness_modulo101(inst: &ModuloInstance, trajectory: &[u64]) -> Result<Assignment> {
    check_trajectory(inst, trajectory)?;
    let members: BTreeSet<Tree> = trajectory
        .iter()
        .map(|&v| numeral(NumeralScheme::Mod, v))
        .collect();
    let mut w = Assignment::new();
    w.insert("T".into(), encode_members(&members)?);
    Ok(w)
}

/// Witness for the pairing-language modulo sentence: trajectory numerals
/// and canonical forms, closed forward under every rewrite rule.
pub fn witness_modulo102(
    inst: &ModuloInstance,
    trajectory: &[u64],
    budget: usize,
) -> Result<Assignment> {
    check_trajectory(inst, trajectory)?;
    let mut seed = BTreeSet::new();
    for &v in trajectory {
        seed.insert(numeral(NumeralScheme::Pcp, v));
        seed.insert(u_tilde(v, inst.modulus())?);
    }
    let closure = sigma102_closure(inst, seed, budget)?;
    let mut w = Assignment::new();
    w.insert("T".into(), encode_members(&closure)?);
    Ok(w)
}

/// Canonical realization of the append-zero relation: pair the argument
/// with its two smallest distinct subtrees.
pub fn zero_realization(x: &Tree) -> Result<Tree> {
    let subs = subtrees(x);
    if subs.len() < 2 {
        return Err(Error::Witness(format!(
            "append-zero needs two distinct subtrees, `{x}` has {}",
            subs.len()
        )));
    }
    Ok(Tree::pair(
        Tree::pair(x.clone(), subs[0].clone()),
        Tree::pair(x.clone(), subs[1].clone()),
    ))
}

/// Canonical realization of the append-one relation: two distinct
/// append-zero realizations side by side.
pub fn one_realization(x: &Tree) -> Result<Tree> {
    let subs = subtrees(x);
    if subs.len() < 3 {
        return Err(Error::Witness(format!(
            "append-one needs three distinct subtrees, `{x}` has {}",
            subs.len()
        )));
    }
    Ok(Tree::pair(
        Tree::pair(
            Tree::pair(x.clone(), subs[0].clone()),
            Tree::pair(x.clone(), subs[1].clone()),
        ),
        Tree::pair(
            Tree::pair(x.clone(), subs[0].clone()),
            Tree::pair(x.clone(), subs[2].clone()),
        ),
    ))
}

/// Canonical realization of the append-word relation.
pub fn conc_realization(x: &Tree, word: &str) -> Result<Tree> {
    let mut t = x.clone();
    for c in word.chars() {
        t = if c == '0' { zero_realization(&t)? } else { one_realization(&t)? };
    }
    Ok(t)
}

/// Witness for the subtree-only sentence: canonical parameter trees and
/// the set of canonically realized prefix pairs.
pub fn witness_subtree(inst: &PCPInstance, solution: &[usize]) -> Result<Assignment> {
    if !inst.is_solution(solution) {
        return Err(Error::Witness("index sequence is not a solution".into()));
    }
    let alpha = Tree::pair(Tree::Leaf, Tree::chain(2));
    let beta = Tree::pair(Tree::Leaf, Tree::chain(3));
    let gamma = Tree::pair(Tree::Leaf, Tree::chain(4));
    let delta = Tree::chain(4);

    let mut members = BTreeSet::new();
    for j in 1..=solution.len() {
        let (a, b) = inst.replay(&solution[..j])?;
        let x = conc_realization(&delta, &a)?;
        let y = conc_realization(&delta, &b)?;
        let pair = Tree::pair(
            Tree::pair(zero_realization(&x)?, beta.clone()),
            Tree::pair(zero_realization(&y)?, gamma.clone()),
        );
        members.insert(pair);
    }

    let mut w = Assignment::new();
    w.insert("alpha".into(), alpha.clone());
    w.insert("beta".into(), beta);
    w.insert("gamma".into(), gamma);
    w.insert("delta".into(), delta);
    w.insert(
        "T".into(),
        crate::encodings::encode_set(&members, &alpha)?,
    );
    Ok(w)
}

/// Witness for the purely existential sentence: both prefix-sequence
/// chains, their extraction chains, and every hierarchically named inner
/// existential.
pub fn witness_existential(inst: &PCPInstance, solution: &[usize]) -> Result<Assignment> {
    if !inst.is_solution(solution) {
        return Err(Error::Witness("index sequence is not a solution".into()));
    }
    let a_side = side_params(inst.pairs().iter().map(|(a, _)| a.clone()).collect())?;
    let b_side = side_params(inst.pairs().iter().map(|(_, b)| b.clone()).collect())?;

    let mut w = Assignment::new();
    for (params, chain, last, rest, extraction, index_word, stepped) in [
        (&a_side, "L", "U", "U_prime", "W_L", "X_L", "S_L"),
        (&b_side, "R", "V", "V_prime", "W_R", "X_R", "S_R"),
    ] {
        let p = build_p_element(params, solution)?;
        let (p_left, p_right) = p.children().expect("chain elements are pairs");
        w.insert(last.into(), p_right.clone());
        w.insert(rest.into(), p_left.clone());
        // inner existentials of the chain membership: the real last word
        // for the matching first codeword, a placeholder elsewhere
        for m in 1..=params.n() {
            let value = if m == solution[0] { p_right.clone() } else { Tree::Leaf };
            w.insert(format!("{chain}.S{m}"), value.clone());
            w.insert(format!("{extraction}.T.S{m}"), value);
        }
        let p2 = build_p2_element(params, solution)?;
        w.insert(extraction.into(), p2.element.clone());
        w.insert(index_word.into(), p2.extracted.clone());
        w.insert(stepped.into(), p2.stepped.clone());
        w.insert(format!("{extraction}.X"), p2.extracted);
        w.insert(format!("{extraction}.T"), p.clone());
        w.insert(chain.into(), p);
    }
    Ok(w)
}
