//! Semantics over the standard model: closed-formula evaluation, budgeted
//! semi-decision for unbounded existentials, and witness verification.
//!
//! Evaluation works on hash-consed trees so that equality is O(1) and
//! subtree checks memoize across the quantifier loops.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::formula::{classify, free_vars, Formula, TermExpr};
use crate::tree::{enumerate, Tree};

/// Maps variable names to trees. Total on the free variables of whatever
/// formula it is used with.
pub type Assignment = BTreeMap<String, Tree>;

/// Result of a budgeted truth check. `True` and `False` are final;
/// `Unknown` reports an exhausted search and can only occur for sentences
/// with at least one unbounded existential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => write!(f, "true"),
            Verdict::False => write!(f, "false"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

pub(crate) type Id = u32;
const LEAF: Id = 0;

/// Hash-consing arena plus memo tables. One context can be reused across
/// many evaluations; entries are only ever added.
pub struct EvalCtx {
    /// children of each interned node; `None` for the leaf
    nodes: Vec<Option<(Id, Id)>>,
    sizes: Vec<u64>,
    pair_ids: HashMap<(Id, Id), Id>,
    sub_memo: HashMap<(Id, Id), bool>,
    bound_lists: HashMap<Id, Rc<Vec<Id>>>,
}

impl Default for EvalCtx {
    fn default() -> Self {
        Self::new()
    }
}

impl EvalCtx {
    pub fn new() -> Self {
        EvalCtx {
            nodes: vec![None],
            sizes: vec![1],
            pair_ids: HashMap::new(),
            sub_memo: HashMap::new(),
            bound_lists: HashMap::new(),
        }
    }

    fn pair(&mut self, l: Id, r: Id) -> Id {
        if let Some(&id) = self.pair_ids.get(&(l, r)) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(Some((l, r)));
        self.sizes.push(self.sizes[l as usize] + self.sizes[r as usize]);
        self.pair_ids.insert((l, r), id);
        id
    }

    pub(crate) fn intern(&mut self, t: &Tree) -> Id {
        match t {
            Tree::Leaf => LEAF,
            Tree::Pair(l, r) => {
                let li = self.intern(l);
                let ri = self.intern(r);
                self.pair(li, ri)
            }
        }
    }

    pub(crate) fn tree_of(&self, id: Id) -> Tree {
        match self.nodes[id as usize] {
            None => Tree::Leaf,
            Some((l, r)) => Tree::pair(self.tree_of(l), self.tree_of(r)),
        }
    }

    fn size(&self, id: Id) -> u64 {
        self.sizes[id as usize]
    }

    fn is_sub(&mut self, a: Id, b: Id) -> bool {
        if a == b {
            return true;
        }
        if self.size(a) >= self.size(b) {
            return false;
        }
        if let Some(&v) = self.sub_memo.get(&(a, b)) {
            return v;
        }
        let v = match self.nodes[b as usize] {
            None => false,
            Some((l, r)) => self.is_sub(a, l) || self.is_sub(a, r),
        };
        self.sub_memo.insert((a, b), v);
        v
    }

    /// Canonical order on interned trees; must agree with `Tree`'s `Ord`.
    fn cmp_ids(&self, a: Id, b: Id) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if a == b {
            return Ordering::Equal;
        }
        self.size(a).cmp(&self.size(b)).then_with(|| {
            match (self.nodes[a as usize], self.nodes[b as usize]) {
                (Some((al, ar)), Some((bl, br))) => {
                    self.cmp_ids(al, bl).then_with(|| self.cmp_ids(ar, br))
                }
                _ => Ordering::Equal,
            }
        })
    }

    /// Distinct subtrees of `b` in canonical order; cached. Bounded
    /// quantifiers iterate exactly this list.
    fn bound_list(&mut self, b: Id) -> Rc<Vec<Id>> {
        if let Some(list) = self.bound_lists.get(&b) {
            return Rc::clone(list);
        }
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![b];
        while let Some(id) = stack.pop() {
            if seen.insert(id) {
                if let Some((l, r)) = self.nodes[id as usize] {
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        let mut list: Vec<Id> = seen.into_iter().collect();
        list.sort_by(|&x, &y| self.cmp_ids(x, y));
        let rc = Rc::new(list);
        self.bound_lists.insert(b, Rc::clone(&rc));
        rc
    }

    fn substitute(&mut self, t: Id, from: Id, to: Id) -> Id {
        let mut memo = HashMap::new();
        self.subst_rec(t, from, to, &mut memo)
    }

    fn subst_rec(&mut self, t: Id, from: Id, to: Id, memo: &mut HashMap<Id, Id>) -> Id {
        if t == from {
            return to;
        }
        if let Some(&v) = memo.get(&t) {
            return v;
        }
        let out = match self.nodes[t as usize] {
            None => LEAF,
            Some((l, r)) => {
                let li = self.subst_rec(l, from, to, memo);
                let ri = self.subst_rec(r, from, to, memo);
                self.pair(li, ri)
            }
        };
        memo.insert(t, out);
        out
    }
}

/// Variable scope used during evaluation. Lookup takes the innermost
/// binding.
#[derive(Default)]
struct Scope {
    stack: Vec<(String, Id)>,
}

impl Scope {
    fn lookup(&self, name: &str) -> Option<Id> {
        self.stack
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, id)| id)
    }

    fn push(&mut self, name: &str, id: Id) {
        self.stack.push((name.to_string(), id));
    }

    fn pop(&mut self) {
        self.stack.pop();
    }
}

fn eval_term_id(ctx: &mut EvalCtx, term: &TermExpr, scope: &Scope) -> Result<Id> {
    match term {
        TermExpr::Var(v) => scope
            .lookup(v)
            .ok_or_else(|| Error::UnboundVar(v.clone())),
        TermExpr::Bot => Ok(LEAF),
        TermExpr::Pair(l, r) => {
            let li = eval_term_id(ctx, l, scope)?;
            let ri = eval_term_id(ctx, r, scope)?;
            Ok(ctx.pair(li, ri))
        }
        TermExpr::Subst { body, from, to } => {
            let b = eval_term_id(ctx, body, scope)?;
            let f = eval_term_id(ctx, from, scope)?;
            let t = eval_term_id(ctx, to, scope)?;
            Ok(ctx.substitute(b, f, t))
        }
    }
}

/// Homomorphic term evaluation under an assignment.
pub fn eval_term(ctx: &mut EvalCtx, term: &TermExpr, assignment: &Assignment) -> Result<Tree> {
    let mut scope = Scope::default();
    for (name, tree) in assignment {
        let id = ctx.intern(tree);
        scope.push(name, id);
    }
    let id = eval_term_id(ctx, term, &scope)?;
    Ok(ctx.tree_of(id))
}

fn eval_rec(ctx: &mut EvalCtx, f: &Formula, scope: &mut Scope) -> Result<bool> {
    match f {
        Formula::Eq(a, b) => Ok(eval_term_id(ctx, a, scope)? == eval_term_id(ctx, b, scope)?),
        Formula::Neq(a, b) => Ok(eval_term_id(ctx, a, scope)? != eval_term_id(ctx, b, scope)?),
        Formula::Sub(a, b) => {
            let ai = eval_term_id(ctx, a, scope)?;
            let bi = eval_term_id(ctx, b, scope)?;
            Ok(ctx.is_sub(ai, bi))
        }
        Formula::NotSub(a, b) => {
            let ai = eval_term_id(ctx, a, scope)?;
            let bi = eval_term_id(ctx, b, scope)?;
            Ok(!ctx.is_sub(ai, bi))
        }
        Formula::And(fs) => {
            for g in fs {
                if !eval_rec(ctx, g, scope)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(fs) => {
            for g in fs {
                if eval_rec(ctx, g, scope)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::ExistsB { var, bound, body } => {
            let b = eval_term_id(ctx, bound, scope)?;
            let list = ctx.bound_list(b);
            for &id in list.iter() {
                scope.push(var, id);
                let v = eval_rec(ctx, body, scope)?;
                scope.pop();
                if v {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::ForallB { var, bound, body } => {
            let b = eval_term_id(ctx, bound, scope)?;
            let list = ctx.bound_list(b);
            for &id in list.iter() {
                scope.push(var, id);
                let v = eval_rec(ctx, body, scope)?;
                scope.pop();
                if !v {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists { .. } => Err(Error::Domain(
            "unbounded existential in decidable evaluation".into(),
        )),
    }
}

/// Evaluate a formula with no unbounded existentials. Total and
/// terminating: bounded quantifiers iterate the subtrees of their bound.
pub fn eval_decidable(ctx: &mut EvalCtx, f: &Formula, assignment: &Assignment) -> Result<bool> {
    let mut scope = Scope::default();
    for (name, tree) in assignment {
        let id = ctx.intern(tree);
        scope.push(name, id);
    }
    eval_rec(ctx, f, &mut scope)
}

fn search_rec(
    ctx: &mut EvalCtx,
    f: &Formula,
    scope: &mut Scope,
    pool: &[Vec<Id>],
) -> Result<bool> {
    match f {
        Formula::Exists { var, body } => {
            for ids in pool.iter() {
                for &id in ids {
                    scope.push(var, id);
                    let v = search_rec(ctx, body, scope, pool)?;
                    scope.pop();
                    if v {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        Formula::And(fs) => {
            for g in fs {
                if !search_rec(ctx, g, scope, pool)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(fs) => {
            for g in fs {
                if search_rec(ctx, g, scope, pool)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::ExistsB { var, bound, body } => {
            let b = eval_term_id(ctx, bound, scope)?;
            let list = ctx.bound_list(b);
            for &id in list.iter() {
                scope.push(var, id);
                let v = search_rec(ctx, body, scope, pool)?;
                scope.pop();
                if v {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::ForallB { var, bound, body } => {
            let b = eval_term_id(ctx, bound, scope)?;
            let list = ctx.bound_list(b);
            for &id in list.iter() {
                scope.push(var, id);
                let v = search_rec(ctx, body, scope, pool)?;
                scope.pop();
                if !v {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        literal => eval_rec(ctx, literal, scope),
    }
}

/// Budgeted truth check for a closed sigma-sentence.
///
/// Every unbounded existential is searched jointly over all trees of size
/// 1 to `budget`, outer to inner, ascending size then enumeration order.
/// Returns `True` on the first satisfying assignment; sentences without
/// unbounded existentials are decided exactly; otherwise the search
/// exhausts to `Unknown`. Monotone: `True` at a budget stays `True` at
/// every larger budget.
pub fn check(ctx: &mut EvalCtx, f: &Formula, budget: u64) -> Result<Verdict> {
    if !free_vars(f).is_empty() {
        return Err(Error::InvalidFormula(
            "check requires a sentence without free variables".into(),
        ));
    }
    let profile = classify(f).profile;
    if profile.unbounded_exists == 0 {
        return Ok(if eval_decidable(ctx, f, &Assignment::new())? {
            Verdict::True
        } else {
            Verdict::False
        });
    }
    let mut pool = Vec::new();
    for n in 1..=budget.max(1) {
        let trees = enumerate(n)?;
        pool.push(trees.iter().map(|t| ctx.intern(t)).collect::<Vec<Id>>());
    }
    let mut scope = Scope::default();
    if search_rec(ctx, f, &mut scope, &pool)? {
        Ok(Verdict::True)
    } else {
        Ok(Verdict::Unknown)
    }
}

/// Collect the names of all unbounded existentials, rejecting duplicates
/// (witnesses are addressed by name).
pub fn witness_vars(f: &Formula) -> Result<Vec<String>> {
    let mut names = Vec::new();
    fn walk(f: &Formula, names: &mut Vec<String>) -> Result<()> {
        match f {
            Formula::Exists { var, body } => {
                if names.contains(var) {
                    return Err(Error::Witness(format!(
                        "existential variable `{var}` is bound more than once"
                    )));
                }
                names.push(var.clone());
                walk(body, names)
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().try_for_each(|g| walk(g, names)),
            Formula::ExistsB { body, .. } | Formula::ForallB { body, .. } => walk(body, names),
            _ => Ok(()),
        }
    }
    walk(f, &mut names)?;
    Ok(names)
}

fn strip_exists(f: &Formula) -> Formula {
    match f {
        Formula::Exists { body, .. } => strip_exists(body),
        Formula::And(fs) => Formula::And(fs.iter().map(strip_exists).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(strip_exists).collect()),
        Formula::ExistsB { var, bound, body } => Formula::ExistsB {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(strip_exists(body)),
        },
        Formula::ForallB { var, bound, body } => Formula::ForallB {
            var: var.clone(),
            bound: bound.clone(),
            body: Box::new(strip_exists(body)),
        },
        literal => literal.clone(),
    }
}

/// Check a named witness against a closed sentence: every unbounded
/// existential (outer and nested) is instantiated from `witness` by name
/// and the remaining bounded formula is evaluated.
pub fn verify_witness(ctx: &mut EvalCtx, f: &Formula, witness: &Assignment) -> Result<bool> {
    if !free_vars(f).is_empty() {
        return Err(Error::InvalidFormula(
            "verify requires a sentence without free variables".into(),
        ));
    }
    let names = witness_vars(f)?;
    let mut assignment = Assignment::new();
    for name in &names {
        let tree = witness
            .get(name)
            .ok_or_else(|| Error::Witness(format!("missing witness for `{name}`")))?;
        assignment.insert(name.clone(), tree.clone());
    }
    let stripped = strip_exists(f);
    eval_decidable(ctx, &stripped, &assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::tree::parse_tree;

    fn assign(pairs: &[(&str, &str)]) -> Assignment {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse_tree(v).unwrap()))
            .collect()
    }

    #[test]
    fn term_evaluation() {
        let mut ctx = EvalCtx::new();
        let t = crate::formula::parse_term("_").unwrap();
        assert_eq!(eval_term(&mut ctx, &t, &Assignment::new()).unwrap(), Tree::Leaf);

        // replace both leaves of <_,_>
        let t = crate::formula::parse_term("subst(x,_,<_,_>)").unwrap();
        let a = assign(&[("x", "<_,_>")]);
        assert_eq!(
            eval_term(&mut ctx, &t, &a).unwrap(),
            parse_tree("<<_,_>,<_,_>>").unwrap()
        );

        // doubling step: chain of 3 maps to chain of 4
        let t = crate::formula::parse_term("subst(z,<_,_>,z)").unwrap();
        let a = assign(&[("z", "<<_,_>,_>")]);
        assert_eq!(eval_term(&mut ctx, &t, &a).unwrap(), Tree::chain(4));

        let t = crate::formula::parse_term("y").unwrap();
        assert!(eval_term(&mut ctx, &t, &Assignment::new()).is_err());
    }

    #[test]
    fn decidable_evaluation() {
        let mut ctx = EvalCtx::new();
        let f = parse_formula("forall y sub <_,_> . y sub <_,_>").unwrap();
        assert!(eval_decidable(&mut ctx, &f, &Assignment::new()).unwrap());
        let f = parse_formula("_ = <_,_>").unwrap();
        assert!(!eval_decidable(&mut ctx, &f, &Assignment::new()).unwrap());
        let f = parse_formula("exists x . x = _").unwrap();
        assert!(eval_decidable(&mut ctx, &f, &Assignment::new()).is_err());
    }

    #[test]
    fn bounded_exists_matches_expansion() {
        // eval(exists x sub t . phi) must equal an OR over the subtrees of t
        let mut ctx = EvalCtx::new();
        let bodies = [
            "x = _",
            "x = <_,_>",
            "x sub <t,t>",
            "and(x sub t, x != t)",
            "or(x = t, <x,x> sub t)",
        ];
        for n in 1..=5u64 {
            for t in crate::tree::enumerate(n).unwrap() {
                for body_text in bodies {
                    let body = parse_formula(body_text).unwrap();
                    let quantified = Formula::exists_b("x", TermExpr::var("t"), body.clone());
                    let a = { let mut a = Assignment::new(); a.insert("t".into(), t.clone()); a };
                    let direct = eval_decidable(&mut ctx, &quantified, &a).unwrap();
                    let mut any = false;
                    for s in crate::tree::subtrees(&t) {
                        let mut a2 = a.clone();
                        a2.insert("x".into(), s);
                        any |= eval_decidable(&mut ctx, &body, &a2).unwrap();
                    }
                    assert_eq!(direct, any, "body {body_text} bound {t}");
                    // dual check
                    let quantified = Formula::forall_b("x", TermExpr::var("t"), body.clone());
                    let direct = eval_decidable(&mut ctx, &quantified, &a).unwrap();
                    let mut all = true;
                    for s in crate::tree::subtrees(&t) {
                        let mut a2 = a.clone();
                        a2.insert("x".into(), s);
                        all &= eval_decidable(&mut ctx, &body, &a2).unwrap();
                    }
                    assert_eq!(direct, all);
                }
            }
        }
    }

    #[test]
    fn check_basics() {
        let mut ctx = EvalCtx::new();
        let f = parse_formula("exists x . x = <_,_>").unwrap();
        assert_eq!(check(&mut ctx, &f, 2).unwrap(), Verdict::True);
        assert_eq!(check(&mut ctx, &f, 1).unwrap(), Verdict::Unknown);
        let f = parse_formula("_ = <_,_>").unwrap();
        assert_eq!(check(&mut ctx, &f, 1).unwrap(), Verdict::False);
        assert_eq!(check(&mut ctx, &f, 9).unwrap(), Verdict::False);
        let open = parse_formula("x = _").unwrap();
        assert!(check(&mut ctx, &open, 1).is_err());
    }

    #[test]
    fn witness_verification() {
        let mut ctx = EvalCtx::new();
        let f = parse_formula("exists x . x = <_,_>").unwrap();
        assert!(verify_witness(&mut ctx, &f, &assign(&[("x", "<_,_>")])).unwrap());
        assert!(!verify_witness(&mut ctx, &f, &assign(&[("x", "_")])).unwrap());
        assert!(verify_witness(&mut ctx, &f, &Assignment::new()).is_err());
        let dup = parse_formula("and(exists x . x = _, exists x . x = _)").unwrap();
        assert!(verify_witness(&mut ctx, &dup, &assign(&[("x", "_")])).is_err());
    }

    #[test]
    fn negation_duality_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut ctx = EvalCtx::new();
        let pool: Vec<Tree> = (1..=4).flat_map(|n| crate::tree::enumerate(n).unwrap()).collect();

        // random decidable sentences: literals over closed terms plus bounded quantifiers
        fn gen(rng: &mut impl Rng, pool: &[Tree], depth: usize, vars: &mut Vec<String>) -> Formula {
            let t = |rng: &mut dyn rand::RngCore, vars: &Vec<String>, pool: &[Tree]| -> TermExpr {
                if !vars.is_empty() && rng.gen_bool(0.5) {
                    TermExpr::var(vars[rng.gen_range(0..vars.len())].clone())
                } else {
                    TermExpr::from_tree(&pool[rng.gen_range(0..pool.len())])
                }
            };
            if depth == 0 || rng.gen_bool(0.35) {
                let a = t(rng, vars, pool);
                let b = t(rng, vars, pool);
                return match rng.gen_range(0..4) {
                    0 => Formula::Eq(a, b),
                    1 => Formula::Neq(a, b),
                    2 => Formula::Sub(a, b),
                    _ => Formula::NotSub(a, b),
                };
            }
            match rng.gen_range(0..4) {
                0 => Formula::And(vec![
                    gen(rng, pool, depth - 1, vars),
                    gen(rng, pool, depth - 1, vars),
                ]),
                1 => Formula::Or(vec![
                    gen(rng, pool, depth - 1, vars),
                    gen(rng, pool, depth - 1, vars),
                ]),
                k => {
                    let name = format!("v{}", vars.len());
                    let bound = TermExpr::from_tree(&pool[rng.gen_range(0..pool.len())]);
                    vars.push(name.clone());
                    let body = gen(rng, pool, depth - 1, vars);
                    vars.pop();
                    if k == 2 {
                        Formula::exists_b(name, bound, body)
                    } else {
                        Formula::forall_b(name, bound, body)
                    }
                }
            }
        }

        for _ in 0..500 {
            let mut vars = Vec::new();
            let f = gen(&mut rng, &pool, 3, &mut vars);
            let neg = crate::formula::nnf_negate(&f).unwrap();
            let v = check(&mut ctx, &f, 1).unwrap();
            let nv = check(&mut ctx, &neg, 1).unwrap();
            match (v, nv) {
                (Verdict::True, Verdict::False) | (Verdict::False, Verdict::True) => {}
                other => panic!("negation duality violated: {other:?}"),
            }
        }
    }
}
