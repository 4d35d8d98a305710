//! Codeword-prefix sequence classes and their extraction chains: the trees
//! that record, step by step, how a word is assembled from a fixed list of
//! codewords, plus the operators that expose the index sequence and restore
//! final letters.

use crate::encodings::fraction::{n_class_formula, FractionParams};
use crate::encodings::semigroup::letter;
use crate::error::{Error, Result};
use crate::formula::{Formula, TermExpr};
use crate::tree::{subterm, substitute, subtrees, tuple, Tree};

/// A letter of the marked alphabet: the two base letters plus one marker
/// per codeword (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqLetter {
    Zero,
    One,
    Mu(usize),
}

/// Parameters shared by the sequence classes: the codeword list and the
/// two anchor trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqParams {
    pub codewords: Vec<String>,
    pub alpha: Tree,
    pub gamma: Tree,
}

impl SeqParams {
    pub fn new(codewords: Vec<String>, alpha: Tree, gamma: Tree) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::Instance("codeword list must be nonempty".into()));
        }
        for c in &codewords {
            if c.is_empty() || !c.chars().all(|ch| ch == '0' || ch == '1') {
                return Err(Error::Instance(format!(
                    "codeword `{c}` must be a nonempty binary string"
                )));
            }
        }
        if subterm(&alpha, &gamma) || subterm(&gamma, &alpha) {
            return Err(Error::Domain("anchors must be incomparable".into()));
        }
        let n = codewords.len();
        for i in 1..=(2 + 2 * n) {
            let g = letter(i);
            if subterm(&alpha, &g) || subterm(&g, &alpha) {
                return Err(Error::Domain(format!(
                    "anchor {alpha} must be incomparable with every letter tree"
                )));
            }
        }
        for i in 1..=n {
            let mu = letter(2 + i);
            if subterm(&gamma, &mu) {
                return Err(Error::Domain(format!(
                    "anchor {gamma} must not occur in the marker letters"
                )));
            }
        }
        Ok(SeqParams { codewords, alpha, gamma })
    }

    pub fn n(&self) -> usize {
        self.codewords.len()
    }

    /// `<alpha,alpha>`, the emphasised anchor used to tell original anchors
    /// from substituted ones.
    pub fn delta(&self) -> Tree {
        Tree::pair(self.alpha.clone(), self.alpha.clone())
    }

    /// Tree of one letter. Base letters take the first two letter trees,
    /// markers the next `n`, fresh markers the `n` after that.
    pub fn letter_tree(&self, l: SeqLetter) -> Tree {
        match l {
            SeqLetter::Zero => letter(1),
            SeqLetter::One => letter(2),
            SeqLetter::Mu(i) => letter(2 + i),
        }
    }

    pub fn fresh_marker_tree(&self, i: usize) -> Tree {
        letter(2 + self.n() + i)
    }

    fn letter_of_tree(&self, t: &Tree) -> Option<SeqLetter> {
        if t == &letter(1) {
            return Some(SeqLetter::Zero);
        }
        if t == &letter(2) {
            return Some(SeqLetter::One);
        }
        (1..=self.n()).find(|&i| t == &letter(2 + i)).map(SeqLetter::Mu)
    }

    /// The marked word of codeword `i`: its bits with the final bit
    /// replaced by the i-th marker.
    pub fn codeword_word(&self, i: usize) -> Result<Vec<SeqLetter>> {
        let c = self
            .codewords
            .get(i - 1)
            .ok_or_else(|| Error::Instance(format!("codeword index {i} out of range")))?;
        let mut word: Vec<SeqLetter> = c
            .chars()
            .take(c.len() - 1)
            .map(|ch| if ch == '0' { SeqLetter::Zero } else { SeqLetter::One })
            .collect();
        word.push(SeqLetter::Mu(i));
        Ok(word)
    }

    /// Marked word of a concatenation of codewords.
    pub fn word_for_indices(&self, indices: &[usize]) -> Result<Vec<SeqLetter>> {
        let mut out = Vec::new();
        for &i in indices {
            out.extend(self.codeword_word(i)?);
        }
        Ok(out)
    }
}

/// Right-to-left word code over an arbitrary base: the deepest letter of
/// the tree is the last letter of the word.
pub fn tau_rtl(params: &SeqParams, word: &[SeqLetter], base: &Tree) -> Tree {
    let mut t = base.clone();
    for &l in word.iter().rev() {
        t = Tree::pair(t, params.letter_tree(l));
    }
    t
}

/// Decode a right-to-left word code, first letter outermost.
pub fn tau_rtl_decode(params: &SeqParams, t: &Tree, base: &Tree) -> Option<Vec<SeqLetter>> {
    let mut word = Vec::new();
    let mut cur = t;
    loop {
        if cur == base {
            return Some(word);
        }
        let (rest, g) = cur.children()?;
        word.push(params.letter_of_tree(g)?);
        cur = rest;
    }
}

/// Code of the codeword `i` over `base`.
pub fn codeword_tree(params: &SeqParams, i: usize, base: &Tree) -> Result<Tree> {
    Ok(tau_rtl(params, &params.codeword_word(i)?, base))
}

/// Code of the concatenation of the indexed codewords over `base`.
pub fn encode_word(params: &SeqParams, indices: &[usize], base: &Tree) -> Result<Tree> {
    Ok(tau_rtl(params, &params.word_for_indices(indices)?, base))
}

/// Domain formula for codes of arbitrary marked words (including the empty
/// one) over the first anchor: collapsing every letter to the zero letter
/// must land in the frame class over the anchor.
pub fn tau_sigma_star_domain(params: &SeqParams, x: TermExpr) -> Formula {
    let g0 = TermExpr::from_tree(&params.letter_tree(SeqLetter::Zero));
    let mut steps = vec![(
        TermExpr::from_tree(&params.letter_tree(SeqLetter::One)),
        g0.clone(),
    )];
    for i in 1..=params.n() {
        steps.push((
            TermExpr::from_tree(&params.letter_tree(SeqLetter::Mu(i))),
            g0.clone(),
        ));
    }
    let collapsed = TermExpr::subst_chain(x, steps);
    let p = FractionParams::new(
        params.alpha.clone(),
        vec![params.letter_tree(SeqLetter::Zero)],
    )
    .expect("anchor incomparable with letters");
    Formula::or(vec![
        Formula::Eq(collapsed.clone(), TermExpr::from_tree(&params.alpha)),
        n_class_formula(collapsed, &p),
    ])
}

/// Domain formula for codes of nonempty pure-marker words over the second
/// anchor.
pub fn tau_mu_plus_domain(params: &SeqParams, x: TermExpr) -> Formula {
    let mu1 = TermExpr::from_tree(&params.letter_tree(SeqLetter::Mu(1)));
    let steps = (2..=params.n()).map(|i| {
        (
            TermExpr::from_tree(&params.letter_tree(SeqLetter::Mu(i))),
            mu1.clone(),
        )
    });
    let collapsed = TermExpr::subst_chain(x, steps);
    let p = FractionParams::new(
        params.gamma.clone(),
        vec![params.letter_tree(SeqLetter::Mu(1))],
    )
    .expect("anchor incomparable with letters");
    n_class_formula(collapsed, &p)
}

/// The prefix-sequence element for a nonempty index sequence:
/// `<gamma, w(i1), w(i1 i2), ..., w(i1..im)>`.
pub fn build_p_element(params: &SeqParams, indices: &[usize]) -> Result<Tree> {
    if indices.is_empty() {
        return Err(Error::Instance("index sequence must be nonempty".into()));
    }
    let mut parts = vec![params.gamma.clone()];
    for j in 1..=indices.len() {
        parts.push(encode_word(params, &indices[..j], &params.alpha)?);
    }
    tuple(&parts)
}

/// Decode a prefix-sequence element back to its index sequence.
pub fn decode_p_element(params: &SeqParams, t: &Tree) -> Option<Vec<usize>> {
    let mut elements = Vec::new();
    let mut cur = t;
    while cur != &params.gamma {
        let (rest, e) = cur.children()?;
        elements.push(e);
        cur = rest;
    }
    if elements.is_empty() {
        return None;
    }
    elements.reverse();
    let mut indices = Vec::new();
    let mut expected: Vec<SeqLetter> = Vec::new();
    for e in elements {
        let word = tau_rtl_decode(params, e, &params.alpha)?;
        // must extend the previous prefix by exactly one codeword
        if word.len() <= expected.len() || word[..expected.len()] != expected[..] {
            return None;
        }
        let tail = &word[expected.len()..];
        let Some(&SeqLetter::Mu(i)) = tail.last() else {
            return None;
        };
        if tail != params.codeword_word(i).ok()?.as_slice() {
            return None;
        }
        indices.push(i);
        expected = word;
    }
    Some(indices)
}

/// Semantic membership in the prefix-sequence class.
pub fn p_class_member(params: &SeqParams, t: &Tree) -> bool {
    decode_p_element(params, t).is_some()
}

/// The three characterizing conditions of the prefix-sequence class,
/// decided semantically.
pub fn p_class_conditions(params: &SeqParams, t: &Tree) -> bool {
    let delta = params.delta();
    if subterm(&delta, t) {
        return false;
    }
    let Some((_, s)) = t.children() else { return false };
    // S must code a marked word
    if tau_rtl_decode(params, s, &params.alpha).is_none() {
        return false;
    }
    let f_t = substitute(t, &params.alpha, &delta);
    for m in 1..=params.n() {
        let head_alpha = Tree::pair(
            params.gamma.clone(),
            codeword_tree(params, m, &params.alpha).expect("checked index"),
        );
        if !subterm(&head_alpha, t) {
            continue;
        }
        let head_delta = Tree::pair(
            params.gamma.clone(),
            codeword_tree(params, m, &params.delta()).expect("checked index"),
        );
        let mut collapsed = substitute(&f_t, &head_delta, &params.gamma);
        for k in 1..=params.n() {
            let ck = codeword_tree(params, k, &params.delta()).expect("checked index");
            collapsed = substitute(&collapsed, &ck, &params.alpha);
        }
        if t == &Tree::pair(collapsed, s.clone()) {
            return true;
        }
    }
    false
}

/// Existential membership formula for the prefix-sequence class. Inner
/// existentials are named `{prefix}.S{m}`, one per candidate first
/// codeword.
pub fn p_member_formula(params: &SeqParams, x: TermExpr, prefix: &str) -> Formula {
    let alpha = TermExpr::from_tree(&params.alpha);
    let gamma = TermExpr::from_tree(&params.gamma);
    let delta = TermExpr::from_tree(&params.delta());
    let mut disjuncts = Vec::new();
    for m in 1..=params.n() {
        let head_alpha = TermExpr::pair(
            gamma.clone(),
            TermExpr::from_tree(&codeword_tree(params, m, &params.alpha).expect("index in range")),
        );
        let head_delta = TermExpr::pair(
            gamma.clone(),
            TermExpr::from_tree(&codeword_tree(params, m, &params.delta()).expect("index in range")),
        );
        let s_name = format!("{prefix}.S{m}");
        let s_var = TermExpr::var(s_name.clone());
        let mut steps = vec![(head_delta, gamma.clone())];
        for k in 1..=params.n() {
            steps.push((
                TermExpr::from_tree(
                    &codeword_tree(params, k, &params.delta()).expect("index in range"),
                ),
                alpha.clone(),
            ));
        }
        let collapsed = TermExpr::subst_chain(
            TermExpr::subst(x.clone(), alpha.clone(), delta.clone()),
            steps,
        );
        disjuncts.push(Formula::and(vec![
            Formula::Sub(head_alpha, x.clone()),
            Formula::exists(
                s_name,
                Formula::and(vec![
                    tau_sigma_star_domain(params, s_var.clone()),
                    Formula::Eq(x.clone(), TermExpr::pair(collapsed, s_var)),
                ]),
            ),
        ]));
    }
    Formula::and(vec![
        Formula::NotSub(TermExpr::from_tree(&params.delta()), x.clone()),
        Formula::or(disjuncts),
    ])
}

fn gamma_steps(params: &SeqParams) -> Vec<(Tree, Tree)> {
    let n = params.n();
    let mut steps = Vec::new();
    // tag each word base with a fresh marker remembering the innermost letter
    for i in 1..=n {
        steps.push((
            Tree::pair(params.alpha.clone(), params.letter_tree(SeqLetter::Mu(i))),
            Tree::pair(params.fresh_marker_tree(i), params.letter_tree(SeqLetter::Mu(i))),
        ));
    }
    // collapse every original letter to the zero letter
    steps.push((
        params.letter_tree(SeqLetter::One),
        params.letter_tree(SeqLetter::Zero),
    ));
    for i in 1..=n {
        steps.push((
            params.letter_tree(SeqLetter::Mu(i)),
            params.letter_tree(SeqLetter::Zero),
        ));
    }
    // rename the fresh markers back
    for i in 1..=n {
        steps.push((params.fresh_marker_tree(i), params.letter_tree(SeqLetter::Mu(i))));
    }
    steps
}

/// The extraction operator: tag word bases, collapse all letters to zero,
/// rename the tags back. On prefix-sequence elements this keeps one marker
/// per word and forgets everything else but the lengths.
pub fn gamma_op(params: &SeqParams, t: &Tree) -> Tree {
    gamma_steps(params)
        .into_iter()
        .fold(t.clone(), |acc, (from, to)| substitute(&acc, &from, &to))
}

/// The extraction operator as a term over `x`.
pub fn gamma_term(params: &SeqParams, x: TermExpr) -> TermExpr {
    TermExpr::subst_chain(
        x,
        gamma_steps(params)
            .into_iter()
            .map(|(f, t)| (TermExpr::from_tree(&f), TermExpr::from_tree(&t))),
    )
}

/// One unpadding pass of the extraction chain: `<mu_i, 0>` collapses to
/// `mu_i` for every marker.
pub fn unpad_steps(params: &SeqParams) -> Vec<(Tree, Tree)> {
    (1..=params.n())
        .map(|i| {
            (
                Tree::pair(params.letter_tree(SeqLetter::Mu(i)), params.letter_tree(SeqLetter::Zero)),
                params.letter_tree(SeqLetter::Mu(i)),
            )
        })
        .collect()
}

fn unpad_once(params: &SeqParams, t: &Tree) -> Tree {
    unpad_steps(params)
        .into_iter()
        .fold(t.clone(), |acc, (from, to)| substitute(&acc, &from, &to))
}

/// Restore final letters: replace each marker by the final bit of the
/// corresponding codeword.
pub fn theta_op(params: &SeqParams, t: &Tree) -> Tree {
    theta_steps(params)
        .into_iter()
        .fold(t.clone(), |acc, (from, to)| substitute(&acc, &from, &to))
}

/// The final-letter restoration as a term over `x`.
pub fn theta_term(params: &SeqParams, x: TermExpr) -> TermExpr {
    TermExpr::subst_chain(
        x,
        theta_steps(params)
            .into_iter()
            .map(|(f, t)| (TermExpr::from_tree(&f), TermExpr::from_tree(&t))),
    )
}

fn theta_steps(params: &SeqParams) -> Vec<(Tree, Tree)> {
    (1..=params.n())
        .map(|i| {
            let last = params.codewords[i - 1].chars().last().expect("nonempty codeword");
            let d = if last == '0' { SeqLetter::Zero } else { SeqLetter::One };
            (params.letter_tree(SeqLetter::Mu(i)), params.letter_tree(d))
        })
        .collect()
}

/// A built extraction-chain element together with the pieces a witness
/// assignment needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P2Element {
    /// the chain element `<alpha, Wk, ..., W1>`
    pub element: Tree,
    /// `Wk`, the pure-marker word recording the index sequence
    pub extracted: Tree,
    /// the left child `<alpha, Wk, ..., W2>`
    pub stepped: Tree,
}

/// Build the extraction chain over a prefix-sequence element: start from
/// the extraction image and unpad until only markers remain.
pub fn build_p2_element(params: &SeqParams, indices: &[usize]) -> Result<P2Element> {
    let p = build_p_element(params, indices)?;
    let w1 = gamma_op(params, &p);
    let mut chain = vec![w1.clone()];
    let max_steps = params
        .word_for_indices(indices)?
        .len()
        + 2;
    let mut cur = w1;
    let mut done = false;
    for _ in 0..max_steps {
        if tau_rtl_decode(params, &cur, &params.gamma)
            .map(|w| !w.is_empty() && w.iter().all(|l| matches!(l, SeqLetter::Mu(_))))
            .unwrap_or(false)
        {
            done = true;
            break;
        }
        cur = unpad_once(params, &cur);
        chain.push(cur.clone());
    }
    if !done {
        return Err(Error::Domain(
            "extraction chain did not terminate in a pure-marker word".into(),
        ));
    }
    let extracted = chain.last().expect("nonempty").clone();
    let mut parts = vec![params.alpha.clone()];
    parts.extend(chain.iter().rev().cloned());
    let element = tuple(&parts)?;
    let (stepped, _) = element.children().expect("chain has at least one entry");
    Ok(P2Element {
        element: element.clone(),
        extracted,
        stepped: stepped.clone(),
    })
}

/// The two characterizing conditions of the extraction-chain class,
/// decided semantically.
pub fn p2_class_conditions(params: &SeqParams, w: &Tree) -> bool {
    // candidate extracted words: X with <alpha, X> a subtree of w
    let candidates: Vec<Tree> = subtrees(w)
        .into_iter()
        .filter_map(|s| {
            let (l, x) = s.children()?;
            if l != &params.alpha {
                return None;
            }
            let word = tau_rtl_decode(params, x, &params.gamma)?;
            if !word.is_empty() && word.iter().all(|l| matches!(l, SeqLetter::Mu(_))) {
                Some(x.clone())
            } else {
                None
            }
        })
        .collect();
    let Some((left, right)) = w.children() else { return false };
    for x in candidates {
        let head = Tree::pair(params.alpha.clone(), x.clone());
        let v = unpad_once(params, &substitute(w, &head, &params.alpha));
        if &v != left {
            continue;
        }
        // right child must be the extraction image of a class element
        let Some(indices) = invert_gamma(params, right) else {
            continue;
        };
        let Ok(p) = build_p_element(params, &indices) else {
            continue;
        };
        if &gamma_op(params, &p) == right {
            return true;
        }
    }
    false
}

/// Recover the index sequence from an extraction image, if the tree is
/// one: the spine must hold all-zero words based at markers whose lengths
/// are the cumulative codeword lengths.
fn invert_gamma(params: &SeqParams, t: &Tree) -> Option<Vec<usize>> {
    let mut words = Vec::new();
    let mut cur = t;
    while cur != &params.gamma {
        let (rest, e) = cur.children()?;
        words.push(e);
        cur = rest;
    }
    words.reverse();
    let mut indices = Vec::new();
    let mut total = 0usize;
    for e in words {
        let mut zeros = 0usize;
        let mut node = e;
        let tag = loop {
            if let Some(i) = (1..=params.n()).find(|&i| node == &params.letter_tree(SeqLetter::Mu(i))) {
                break i;
            }
            let (rest, last) = node.children()?;
            if last != &params.letter_tree(SeqLetter::Zero) {
                return None;
            }
            zeros += 1;
            node = rest;
        };
        indices.push(tag);
        total += params.codewords[tag - 1].len();
        if zeros != total {
            return None;
        }
    }
    if indices.is_empty() {
        None
    } else {
        Some(indices)
    }
}

/// Existential membership formula for the extraction-chain class. Inner
/// existentials are named `{prefix}.X` and `{prefix}.T` (the latter with
/// its own prefix-sequence expansion).
pub fn p2_member_formula(params: &SeqParams, x: TermExpr, prefix: &str) -> Formula {
    let alpha = TermExpr::from_tree(&params.alpha);
    let x_name = format!("{prefix}.X");
    let t_name = format!("{prefix}.T");
    let xv = TermExpr::var(x_name.clone());
    let tv = TermExpr::var(t_name.clone());
    let head = TermExpr::pair(alpha.clone(), xv.clone());
    let mut steps = vec![(head.clone(), alpha)];
    for (from, to) in unpad_steps(params) {
        steps.push((TermExpr::from_tree(&from), TermExpr::from_tree(&to)));
    }
    let v = TermExpr::subst_chain(x.clone(), steps);
    Formula::exists(
        x_name,
        Formula::exists(
            t_name.clone(),
            Formula::and(vec![
                tau_mu_plus_domain(params, xv),
                Formula::Sub(head, x.clone()),
                p_member_formula(params, tv.clone(), &t_name),
                Formula::Eq(x, TermExpr::pair(v, gamma_term(params, tv))),
            ]),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> SeqParams {
        SeqParams::new(
            vec!["01".into(), "00".into(), "10".into()],
            Tree::pair(Tree::Leaf, Tree::chain(2)),
            Tree::pair(Tree::Leaf, Tree::chain(3)),
        )
        .unwrap()
    }

    #[test]
    fn codeword_trees_have_the_documented_shape() {
        // codeword 110 is the word 1 1 mu, innermost marker first
        let p = SeqParams::new(
            vec!["110".into()],
            Tree::pair(Tree::Leaf, Tree::chain(2)),
            Tree::pair(Tree::Leaf, Tree::chain(3)),
        )
        .unwrap();
        let t = codeword_tree(&p, 1, &p.alpha).unwrap();
        let expected = Tree::pair(
            Tree::pair(
                Tree::pair(p.alpha.clone(), p.letter_tree(SeqLetter::Mu(1))),
                p.letter_tree(SeqLetter::One),
            ),
            p.letter_tree(SeqLetter::One),
        );
        assert_eq!(t, expected);
        // empty index list codes the bare anchor
        assert_eq!(encode_word(&p, &[], &p.alpha).unwrap(), p.alpha);
    }

    #[test]
    fn p_elements_decode_and_satisfy_conditions() {
        let p = params();
        let indices = vec![2usize, 3, 1];
        let t = build_p_element(&p, &indices).unwrap();
        assert_eq!(decode_p_element(&p, &t), Some(indices.clone()));
        assert!(p_class_member(&p, &t));
        assert!(p_class_conditions(&p, &t));
        // single index
        let t1 = build_p_element(&p, &[2]).unwrap();
        assert_eq!(
            t1,
            Tree::pair(p.gamma.clone(), codeword_tree(&p, 2, &p.alpha).unwrap())
        );
        assert!(p_class_conditions(&p, &t1));
        assert!(build_p_element(&p, &[]).is_err());
    }

    #[test]
    fn grafting_delta_falsifies_the_conditions() {
        let p = params();
        let t = build_p_element(&p, &[2, 3, 1]).unwrap();
        let grafted = Tree::pair(t.clone(), p.delta());
        assert!(!p_class_conditions(&p, &grafted));
        assert!(!p_class_member(&p, &grafted));
    }

    #[test]
    fn gamma_keeps_markers_and_lengths_only() {
        let p = params();
        let t = build_p_element(&p, &[2, 3, 1]).unwrap();
        let g = gamma_op(&p, &t);
        // independent route: rebuild the image from the decoded indices
        let mut parts = vec![p.gamma.clone()];
        for j in 1..=3usize {
            let len: usize = [2usize, 3, 1][..j]
                .iter()
                .map(|&i| p.codewords[i - 1].len())
                .sum();
            let tag = [2usize, 3, 1][j - 1];
            let mut word = p.letter_tree(SeqLetter::Mu(tag));
            for _ in 0..len {
                word = Tree::pair(word, p.letter_tree(SeqLetter::Zero));
            }
            parts.push(word);
        }
        assert_eq!(g, tuple(&parts).unwrap());
        assert_eq!(invert_gamma(&p, &g), Some(vec![2, 3, 1]));
    }

    #[test]
    fn p2_chain_builds_and_satisfies_conditions() {
        let p = params();
        let e = build_p2_element(&p, &[2, 3, 1]).unwrap();
        // the extracted word lists the indices innermost-first
        let word = tau_rtl_decode(&p, &e.extracted, &p.gamma).unwrap();
        assert_eq!(
            word,
            vec![SeqLetter::Mu(1), SeqLetter::Mu(3), SeqLetter::Mu(2)]
        );
        assert!(p2_class_conditions(&p, &e.element));
        // chain of 6 unpadding passes plus the image itself
        let (rest, w1) = e.element.children().unwrap();
        assert_eq!(w1, &gamma_op(&p, &build_p_element(&p, &[2, 3, 1]).unwrap()));
        assert_eq!(rest, &e.stepped);
        // repeating the final word keeps membership
        let repeated = Tree::pair(
            Tree::pair(e.stepped.clone(), e.extracted.clone()),
            w1.clone(),
        );
        let _ = repeated; // shape sanity only; condition check below mutates
        // corrupting one chain step falsifies the conditions
        let corrupted = Tree::pair(
            Tree::pair(e.stepped.children().unwrap().0.clone(), p.letter_tree(SeqLetter::Zero)),
            w1.clone(),
        );
        assert!(!p2_class_conditions(&p, &corrupted));
    }

    #[test]
    fn repeated_head_is_still_a_member() {
        let p = params();
        let e = build_p2_element(&p, &[1]).unwrap();
        // duplicate the extracted word once more after the head
        let head = Tree::pair(p.alpha.clone(), e.extracted.clone());
        let with_dup = substitute(
            &e.element,
            &head,
            &Tree::pair(head.clone(), e.extracted.clone()),
        );
        assert!(p2_class_conditions(&p, &with_dup));
    }

    #[test]
    fn theta_restores_final_letters() {
        let p = params();
        // c2 c3 c1 spells 00 10 01; markers restore to 0, 0, 1
        let u = encode_word(&p, &[2, 3, 1], &p.alpha).unwrap();
        let restored = theta_op(&p, &u);
        let expected = tau_rtl(
            &p,
            &[
                SeqLetter::Zero,
                SeqLetter::Zero,
                SeqLetter::One,
                SeqLetter::Zero,
                SeqLetter::Zero,
                SeqLetter::One,
            ],
            &p.alpha,
        );
        assert_eq!(restored, expected);
        // all markers equal makes it a tally collapse
        let same = SeqParams::new(
            vec!["10".into(), "00".into()],
            p.alpha.clone(),
            p.gamma.clone(),
        )
        .unwrap();
        let u = encode_word(&same, &[1, 2], &same.alpha).unwrap();
        let collapsed = theta_op(&same, &u);
        let word = tau_rtl_decode(&same, &collapsed, &same.alpha).unwrap();
        assert!(word.iter().all(|l| matches!(l, SeqLetter::Zero | SeqLetter::One)));
    }
}
