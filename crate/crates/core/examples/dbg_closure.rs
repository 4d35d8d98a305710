use std::collections::{BTreeSet, HashMap};
use treebench::encodings::{numeral, u_tilde, NumeralScheme};
use treebench::problems::ModuloInstance;
use treebench::reductions::rule_consequents_for_debug;
use treebench::tree::render_tree;
use treebench::Tree;

fn main() {
    let inst = ModuloInstance::new(2, vec![(1, 0), (6, 4)]).unwrap();
    let mut set: BTreeSet<Tree> = BTreeSet::new();
    set.insert(numeral(NumeralScheme::Pcp, 3));
    set.insert(u_tilde(3, 2).unwrap());
    let mut parent: HashMap<Tree, Tree> = HashMap::new();
    let target = u_tilde(7, 2).unwrap(); // <<c4,c4>,c2>, value 7
    'outer: for _pass in 0..30 {
        let mut fresh: Vec<(Tree, Tree)> = Vec::new();
        for t in &set {
            let mut out = Vec::new();
            rule_consequents_for_debug(&inst, t, &mut out);
            for c in out {
                if !set.contains(&c) {
                    fresh.push((c, t.clone()));
                }
            }
        }
        if fresh.is_empty() { break; }
        for (c, src) in fresh {
            if set.insert(c.clone()) {
                parent.insert(c.clone(), src);
            }
            if set.contains(&target) { break 'outer; }
        }
    }
    // walk ancestry
    let mut cur = target.clone();
    for _ in 0..20 {
        println!("({:>3}) {}", cur.size(), render_tree(&cur));
        match parent.get(&cur) {
            Some(p) => cur = p.clone(),
            None => { println!("  (seed)"); break; }
        }
    }
}
