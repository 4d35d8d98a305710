//! Text format for terms and formulas.
//!
//! ```text
//! term    := "_" | id | "<" term "," term ">" | "subst(" term "," term "," term ")"
//! atom    := term ("=" | "!=" | "sub" | "!sub") term
//! formula := atom
//!          | "and(" formula {"," formula} ")"
//!          | "or(" formula {"," formula} ")"
//!          | "exists" id "." formula
//!          | "exists" id "sub" term "." formula
//!          | "forall" id "sub" term "." formula
//! ```
//!
//! The canonical renderer emits single spaces around keywords and operators
//! and none inside terms.

use std::fmt::Write as _;

use super::syntax::{Formula, TermExpr};
use crate::error::{Error, Result};

const KEYWORDS: [&str; 6] = ["and", "or", "exists", "forall", "sub", "subst"];

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", b as char)))
        }
    }

    /// Identifiers: letters, digits, underscores and inner dots. A lone `_`
    /// is the leaf constant and never an identifier.
    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected identifier"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii identifier")
            .to_string();
        if s == "_" {
            return Err(Error::Parse {
                pos: start,
                msg: "`_` is the leaf constant, not an identifier".into(),
            });
        }
        if s.starts_with('.') || s.ends_with('.') || s.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(Error::Parse {
                pos: start,
                msg: format!("malformed identifier `{s}`"),
            });
        }
        Ok(s)
    }

    /// Consume an identifier-shaped word without committing.
    fn peek_word(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.bytes.len() {
            let c = self.bytes[end];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' {
                end += 1;
            } else {
                break;
            }
        }
        if end == start {
            None
        } else {
            Some((
                std::str::from_utf8(&self.bytes[start..end]).ok()?.to_string(),
                end,
            ))
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if let Some((w, end)) = self.peek_word() {
            if w == word {
                self.pos = end;
                return true;
            }
        }
        false
    }
}

fn parse_term_at(c: &mut Cursor) -> Result<TermExpr> {
    match c.peek() {
        Some(b'_') => {
            // a leaf unless it starts a longer identifier
            if let Some((w, end)) = c.peek_word() {
                if w == "_" {
                    c.pos = end;
                    return Ok(TermExpr::Bot);
                }
                c.pos = end;
                return term_ident(c, w);
            }
            c.pos += 1;
            Ok(TermExpr::Bot)
        }
        Some(b'<') => {
            c.eat(b'<')?;
            let l = parse_term_at(c)?;
            c.eat(b',')?;
            let r = parse_term_at(c)?;
            c.eat(b'>')?;
            Ok(TermExpr::pair(l, r))
        }
        Some(ch) if ch.is_ascii_alphabetic() => {
            let (w, end) = c.peek_word().ok_or_else(|| c.err("expected term"))?;
            c.pos = end;
            if w == "subst" {
                c.eat(b'(')?;
                let body = parse_term_at(c)?;
                c.eat(b',')?;
                let from = parse_term_at(c)?;
                c.eat(b',')?;
                let to = parse_term_at(c)?;
                c.eat(b')')?;
                Ok(TermExpr::subst(body, from, to))
            } else {
                term_ident(c, w)
            }
        }
        _ => Err(c.err("expected term")),
    }
}

fn term_ident(c: &mut Cursor, w: String) -> Result<TermExpr> {
    if KEYWORDS.contains(&w.as_str()) {
        return Err(c.err(format!("keyword `{w}` cannot be used as a variable")));
    }
    Ok(TermExpr::Var(w))
}

fn parse_formula_at(c: &mut Cursor) -> Result<Formula> {
    if c.eat_word("and") {
        return Ok(Formula::And(parse_list(c)?));
    }
    if c.eat_word("or") {
        return Ok(Formula::Or(parse_list(c)?));
    }
    if c.eat_word("exists") {
        let var = c.ident()?;
        if c.eat_word("sub") {
            let bound = parse_term_at(c)?;
            c.eat(b'.')?;
            let body = parse_formula_at(c)?;
            return Ok(Formula::exists_b(var, bound, body));
        }
        c.eat(b'.')?;
        let body = parse_formula_at(c)?;
        return Ok(Formula::exists(var, body));
    }
    if c.eat_word("forall") {
        let var = c.ident()?;
        if !c.eat_word("sub") {
            return Err(c.err("universal quantifiers must be bounded: expected `sub`"));
        }
        let bound = parse_term_at(c)?;
        c.eat(b'.')?;
        let body = parse_formula_at(c)?;
        return Ok(Formula::forall_b(var, bound, body));
    }
    // atom
    let lhs = parse_term_at(c)?;
    c.skip_ws();
    if c.eat_word("sub") {
        let rhs = parse_term_at(c)?;
        return Ok(Formula::Sub(lhs, rhs));
    }
    match c.peek() {
        Some(b'=') => {
            c.pos += 1;
            let rhs = parse_term_at(c)?;
            Ok(Formula::Eq(lhs, rhs))
        }
        Some(b'!') => {
            c.pos += 1;
            if c.bytes.get(c.pos) == Some(&b'=') {
                c.pos += 1;
                let rhs = parse_term_at(c)?;
                Ok(Formula::Neq(lhs, rhs))
            } else if c.eat_word("sub") {
                let rhs = parse_term_at(c)?;
                Ok(Formula::NotSub(lhs, rhs))
            } else {
                Err(c.err("expected `=` or `sub` after `!`"))
            }
        }
        _ => Err(c.err("expected `=`, `!=`, `sub` or `!sub`")),
    }
}

fn parse_list(c: &mut Cursor) -> Result<Vec<Formula>> {
    c.eat(b'(')?;
    let mut out = vec![parse_formula_at(c)?];
    while c.peek() == Some(b',') {
        c.pos += 1;
        out.push(parse_formula_at(c)?);
    }
    c.eat(b')')?;
    Ok(out)
}

pub fn parse_term(input: &str) -> Result<TermExpr> {
    let mut c = Cursor::new(input);
    let t = parse_term_at(&mut c)?;
    c.skip_ws();
    if c.pos != c.bytes.len() {
        return Err(c.err("trailing input after term"));
    }
    Ok(t)
}

pub fn parse_formula(input: &str) -> Result<Formula> {
    let mut c = Cursor::new(input);
    let f = parse_formula_at(&mut c)?;
    c.skip_ws();
    if c.pos != c.bytes.len() {
        return Err(c.err("trailing input after formula"));
    }
    Ok(f)
}

pub fn render_term(t: &TermExpr) -> String {
    let mut s = String::new();
    write_term(t, &mut s);
    s
}

fn write_term(t: &TermExpr, out: &mut String) {
    match t {
        TermExpr::Var(v) => out.push_str(v),
        TermExpr::Bot => out.push('_'),
        TermExpr::Pair(l, r) => {
            out.push('<');
            write_term(l, out);
            out.push(',');
            write_term(r, out);
            out.push('>');
        }
        TermExpr::Subst { body, from, to } => {
            out.push_str("subst(");
            write_term(body, out);
            out.push(',');
            write_term(from, out);
            out.push(',');
            write_term(to, out);
            out.push(')');
        }
    }
}

pub fn render_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(f, &mut s);
    s
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Eq(a, b) => write_atom(a, "=", b, out),
        Formula::Neq(a, b) => write_atom(a, "!=", b, out),
        Formula::Sub(a, b) => write_atom(a, "sub", b, out),
        Formula::NotSub(a, b) => write_atom(a, "!sub", b, out),
        Formula::And(fs) => write_list("and", fs, out),
        Formula::Or(fs) => write_list("or", fs, out),
        Formula::ExistsB { var, bound, body } => {
            let _ = write!(out, "exists {var} sub {} . ", render_term(bound));
            write_formula(body, out);
        }
        Formula::ForallB { var, bound, body } => {
            let _ = write!(out, "forall {var} sub {} . ", render_term(bound));
            write_formula(body, out);
        }
        Formula::Exists { var, body } => {
            let _ = write!(out, "exists {var} . ");
            write_formula(body, out);
        }
    }
}

fn write_atom(a: &TermExpr, op: &str, b: &TermExpr, out: &mut String) {
    write_term(a, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_term(b, out);
}

fn write_list(name: &str, fs: &[Formula], out: &mut String) {
    out.push_str(name);
    out.push('(');
    for (i, f) in fs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_formula(f, out);
    }
    out.push(')');
}
