//! Brute-force solvers, used as oracles by the tests and the CLI.

use super::instances::{ModuloInstance, PCPInstance};

/// Search over index sequences by length, lexicographic within a length;
/// returns the first solution of length at most `max_len`. Branches where
/// neither concatenation is a prefix of the other are pruned.
pub fn pcp_solve(inst: &PCPInstance, max_len: usize) -> Option<Vec<usize>> {
    fn extend_exact(
        inst: &PCPInstance,
        prefix: &mut Vec<usize>,
        a: &str,
        b: &str,
        remaining: usize,
    ) -> Option<Vec<usize>> {
        for (idx, (ai, bi)) in inst.pairs().iter().enumerate() {
            let mut a2 = a.to_string();
            let mut b2 = b.to_string();
            a2.push_str(ai);
            b2.push_str(bi);
            if !(a2.starts_with(&b2) || b2.starts_with(&a2)) {
                continue;
            }
            prefix.push(idx + 1);
            if remaining == 1 {
                if a2 == b2 {
                    return Some(prefix.clone());
                }
            } else if let Some(found) = extend_exact(inst, prefix, &a2, &b2, remaining - 1) {
                return Some(found);
            }
            prefix.pop();
        }
        None
    }

    // iterative deepening keeps the shortest-then-lexicographic contract
    for len in 1..=max_len {
        let mut prefix = Vec::new();
        if let Some(found) = extend_exact(inst, &mut prefix, "", "", len) {
            return Some(found);
        }
    }
    None
}

/// One application of the residue-dispatched affine map.
pub fn modulo_step(inst: &ModuloInstance, x: u64) -> u64 {
    let m = inst.modulus();
    let (a, b) = inst.rule(x % m);
    a * (x / m) + b
}

/// Iterate the map from 3; the least `N <= max_n` with value 2, if any.
pub fn modulo_iterate(inst: &ModuloInstance, max_n: u64) -> Option<u64> {
    let mut x = 3u64;
    for n in 0..=max_n {
        if x == 2 {
            return Some(n);
        }
        x = modulo_step(inst, x);
    }
    None
}

/// The value sequence `3, f(3), ..., f^N(3)` ending at the first 2, if the
/// map reaches it within `max_n` steps.
pub fn modulo_trajectory(inst: &ModuloInstance, max_n: u64) -> Option<Vec<u64>> {
    let n = modulo_iterate(inst, max_n)?;
    let mut out = vec![3u64];
    let mut x = 3u64;
    for _ in 0..n {
        x = modulo_step(inst, x);
        out.push(x);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classic() -> PCPInstance {
        PCPInstance::new(vec![
            ("1".into(), "111".into()),
            ("10111".into(), "10".into()),
            ("10".into(), "0".into()),
        ])
        .unwrap()
    }

    #[test]
    fn pcp_solver_examples() {
        let trivial = PCPInstance::new(vec![("0".into(), "0".into())]).unwrap();
        assert_eq!(pcp_solve(&trivial, 1), Some(vec![1]));
        assert_eq!(pcp_solve(&classic(), 4), Some(vec![2, 1, 1, 3]));
        let unsolvable = PCPInstance::new(vec![("0".into(), "00".into())]).unwrap();
        assert_eq!(pcp_solve(&unsolvable, 10), None);
    }

    #[test]
    fn pcp_solver_matches_exhaustive_reference() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);

        // reference: plain enumeration of all index sequences, no pruning
        fn reference(inst: &PCPInstance, max_len: usize) -> Option<Vec<usize>> {
            for len in 1..=max_len {
                let n = inst.len();
                let mut counters = vec![1usize; len];
                'seq: loop {
                    if inst.is_solution(&counters) {
                        return Some(counters);
                    }
                    // odometer increment, lexicographic order
                    let mut i = len;
                    loop {
                        if i == 0 {
                            break 'seq;
                        }
                        i -= 1;
                        if counters[i] < n {
                            counters[i] += 1;
                            for c in counters.iter_mut().skip(i + 1) {
                                *c = 1;
                            }
                            break;
                        }
                        counters[i] = 1;
                    }
                }
            }
            None
        }

        let mut rand_word = |rng: &mut rand_chacha::ChaCha8Rng| -> String {
            let len = rng.gen_range(1..=3);
            (0..len)
                .map(|_| if rng.gen_bool(0.5) { '0' } else { '1' })
                .collect()
        };
        for _ in 0..50 {
            let inst = PCPInstance::new(vec![
                (rand_word(&mut rng), rand_word(&mut rng)),
                (rand_word(&mut rng), rand_word(&mut rng)),
            ])
            .unwrap();
            let ours = pcp_solve(&inst, 5);
            let refr = reference(&inst, 5);
            assert_eq!(ours, refr, "instance {:?}", inst.pairs());
            if let Some(sol) = ours {
                assert!(inst.is_solution(&sol));
            }
        }
    }

    #[test]
    fn modulo_oracles() {
        let collatz = ModuloInstance::new(2, vec![(1, 0), (6, 4)]).unwrap();
        assert_eq!(modulo_iterate(&collatz, 20), Some(6));
        assert_eq!(
            modulo_trajectory(&collatz, 20),
            Some(vec![3, 10, 5, 16, 8, 4, 2])
        );
        // least index: every earlier value differs from 2
        let traj = modulo_trajectory(&collatz, 20).unwrap();
        assert!(traj[..traj.len() - 1].iter().all(|&v| v != 2));

        let one_step = ModuloInstance::new(2, vec![(1, 0), (0, 2)]).unwrap();
        assert_eq!(modulo_iterate(&one_step, 5), Some(1));
        assert_eq!(modulo_iterate(&one_step, 0), None);
        assert_eq!(modulo_step(&collatz, 10), 5);
        assert_eq!(modulo_step(&collatz, 5), 16);
    }
}
