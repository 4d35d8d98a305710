//! Shape templates for linear polynomials in the pairing-only language:
//! tuple powers standing for scalar multiples, optional numeral tails for
//! constants, and the canonical residue form of a number with respect to a
//! modulus. Leaf counts are the value measure, so every template is built
//! to carry exactly `value + 1` leaves.

use crate::encodings::numeral::{numeral, NumeralScheme};
use crate::error::{Error, Result};
use crate::formula::TermExpr;
use crate::tree::{power, Tree};

fn num(v: u64) -> Tree {
    numeral(NumeralScheme::Pcp, v)
}

/// `x + k`: append `k` extra leaves on the right of `x` viewed as a tuple.
pub fn x_plus(x: &Tree, k: u64) -> Tree {
    let mut t = x.clone();
    for _ in 0..k {
        t = Tree::pair(t, Tree::Leaf);
    }
    t
}

pub fn x_plus_term(x: TermExpr, k: u64) -> TermExpr {
    let mut t = x;
    for _ in 0..k {
        t = TermExpr::pair(t, TermExpr::Bot);
    }
    t
}

/// `e*x (+ m)`: the e-fold tuple of `x`, paired with the m-numeral when
/// `m` is nonzero.
pub fn opl_tree(x: &Tree, e: u64, m: u64) -> Result<Tree> {
    let core = power(x, e)?;
    Ok(if m == 0 { core } else { Tree::pair(core, num(m)) })
}

pub fn opl_term(x: TermExpr, e: u64, m: u64) -> Result<TermExpr> {
    if e == 0 {
        return Err(Error::Domain("power: exponent must be at least 1".into()));
    }
    let mut core = x.clone();
    for _ in 1..e {
        core = TermExpr::pair(core, x.clone());
    }
    Ok(if m == 0 {
        core
    } else {
        TermExpr::pair(core, TermExpr::from_tree(&num(m)))
    })
}

/// `ex*x + ey*y (+ m)`: `ex` copies of `x` then `ey` copies of `y` in one
/// tuple, paired with the m-numeral when `m` is nonzero.
pub fn two_tree(x: &Tree, ex: u64, y: &Tree, ey: u64, m: u64) -> Result<Tree> {
    if ex == 0 || ey == 0 {
        return Err(Error::Domain("tuple powers need positive exponents".into()));
    }
    let mut core = power(x, ex)?;
    for _ in 0..ey {
        core = Tree::pair(core, y.clone());
    }
    Ok(if m == 0 { core } else { Tree::pair(core, num(m)) })
}

pub fn two_term(x: TermExpr, ex: u64, y: TermExpr, ey: u64, m: u64) -> Result<TermExpr> {
    if ex == 0 || ey == 0 {
        return Err(Error::Domain("tuple powers need positive exponents".into()));
    }
    let mut core = x.clone();
    for _ in 1..ex {
        core = TermExpr::pair(core, x.clone());
    }
    for _ in 0..ey {
        core = TermExpr::pair(core, y.clone());
    }
    Ok(if m == 0 {
        core
    } else {
        TermExpr::pair(core, TermExpr::from_tree(&num(m)))
    })
}

/// Canonical residue form of the value `t` with respect to the modulus:
/// the plain numeral below the modulus, otherwise the modulus-fold tuple
/// of the quotient numeral with the remainder numeral as tail.
pub fn u_tilde(t: u64, modulus: u64) -> Result<Tree> {
    if modulus < 2 {
        return Err(Error::Domain("modulus must be at least 2".into()));
    }
    if t < modulus {
        return Ok(num(t));
    }
    let s = t / modulus;
    let r = t % modulus;
    opl_tree(&num(s), modulus, r)
}

/// Match the e-fold tuple of one repeated tree, returning it.
pub fn parse_pow(t: &Tree, e: u64) -> Option<&Tree> {
    if e == 1 {
        return Some(t);
    }
    let (l, r) = t.children()?;
    let x = parse_pow(l, e - 1)?;
    if x == r {
        Some(x)
    } else {
        None
    }
}

/// Match `e*x (+ m)`.
pub fn parse_opl(t: &Tree, e: u64, m: u64) -> Option<&Tree> {
    if m == 0 {
        parse_pow(t, e)
    } else {
        let (core, tail) = t.children()?;
        if tail == &num(m) {
            parse_pow(core, e)
        } else {
            None
        }
    }
}

/// Match `ex*x + ey*y (+ m)`, returning `(x, y)`.
pub fn parse_two(t: &Tree, ex: u64, ey: u64, m: u64) -> Option<(&Tree, &Tree)> {
    let core = if m == 0 {
        t
    } else {
        let (core, tail) = t.children()?;
        if tail != &num(m) {
            return None;
        }
        core
    };
    // peel ey equal right components, the rest is the ex-fold power
    let mut node = core;
    let mut y: Option<&Tree> = None;
    for _ in 0..ey {
        let (l, r) = node.children()?;
        match y {
            None => y = Some(r),
            Some(prev) if prev == r => {}
            _ => return None,
        }
        node = l;
    }
    let x = parse_pow(node, ex)?;
    Some((x, y.expect("ey >= 1")))
}

/// Match `x + k` where the stripped base is not a leaf.
pub fn parse_x_plus(t: &Tree, k: u64) -> Option<&Tree> {
    let mut node = t;
    for _ in 0..k {
        let (l, r) = node.children()?;
        if !r.is_leaf() {
            return None;
        }
        node = l;
    }
    Some(node)
}
