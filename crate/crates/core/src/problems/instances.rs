//! Problem instances and their file formats.

use crate::error::{Error, Result};

/// A correspondence-problem instance: a nonempty list of pairs of nonempty
/// binary strings, indexed 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCPInstance {
    pairs: Vec<(String, String)>,
}

impl PCPInstance {
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Instance("instance needs at least one pair".into()));
        }
        for (a, b) in &pairs {
            for w in [a, b] {
                if w.is_empty() || !w.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::Instance(format!(
                        "`{w}` is not a nonempty binary string"
                    )));
                }
            }
        }
        Ok(PCPInstance { pairs })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The two concatenations of a candidate index sequence (1-based).
    pub fn replay(&self, indices: &[usize]) -> Result<(String, String)> {
        if indices.is_empty() {
            return Err(Error::Instance("index sequence must be nonempty".into()));
        }
        let mut a = String::new();
        let mut b = String::new();
        for &i in indices {
            let (ai, bi) = self
                .pairs
                .get(i.wrapping_sub(1))
                .ok_or_else(|| Error::Instance(format!("index {i} out of range")))?;
            a.push_str(ai);
            b.push_str(bi);
        }
        Ok((a, b))
    }

    pub fn is_solution(&self, indices: &[usize]) -> bool {
        matches!(self.replay(indices), Ok((a, b)) if a == b)
    }

    /// One pair per line, `a<SPACE>b`; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (a, b) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Instance(format!(
                        "expected `a b` on one line, got `{line}`"
                    )))
                }
            };
            pairs.push((a.to_string(), b.to_string()));
        }
        PCPInstance::new(pairs)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.pairs {
            out.push_str(a);
            out.push(' ');
            out.push_str(b);
            out.push('\n');
        }
        out
    }
}

/// A residue-dispatch instance: modulus `M > 1` and one affine rule per
/// residue class `j = 0..M-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuloInstance {
    modulus: u64,
    rules: Vec<(u64, u64)>,
}

impl ModuloInstance {
    pub fn new(modulus: u64, rules: Vec<(u64, u64)>) -> Result<Self> {
        if modulus <= 1 {
            return Err(Error::Instance("modulus must be greater than 1".into()));
        }
        if rules.len() as u64 != modulus {
            return Err(Error::Instance(format!(
                "expected exactly {modulus} rules, got {}",
                rules.len()
            )));
        }
        Ok(ModuloInstance { modulus, rules })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rules(&self) -> &[(u64, u64)] {
        &self.rules
    }

    pub fn rule(&self, j: u64) -> (u64, u64) {
        self.rules[j as usize]
    }

    /// First non-comment line is `M`, then M lines `A<SPACE>B` for the
    /// residues 0..M-1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let m_line = lines
            .next()
            .ok_or_else(|| Error::Instance("missing modulus line".into()))?;
        let modulus: u64 = m_line
            .parse()
            .map_err(|_| Error::Instance(format!("bad modulus `{m_line}`")))?;
        let mut rules = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let (a, b) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Instance(format!(
                        "expected `A B` on one line, got `{line}`"
                    )))
                }
            };
            let a: u64 = a.parse().map_err(|_| Error::Instance(format!("bad number `{a}`")))?;
            let b: u64 = b.parse().map_err(|_| Error::Instance(format!("bad number `{b}`")))?;
            rules.push((a, b));
        }
        ModuloInstance::new(modulus, rules)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.modulus);
        for (a, b) in &self.rules {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pcp_validation_and_replay() {
        assert!(PCPInstance::new(vec![]).is_err());
        assert!(PCPInstance::new(vec![("0".into(), "".into())]).is_err());
        assert!(PCPInstance::new(vec![("02".into(), "1".into())]).is_err());
        let inst = PCPInstance::new(vec![
            ("1".into(), "111".into()),
            ("10111".into(), "10".into()),
            ("10".into(), "0".into()),
        ])
        .unwrap();
        assert!(inst.is_solution(&[2, 1, 1, 3]));
        assert!(!inst.is_solution(&[1]));
        assert!(!inst.is_solution(&[]));
        assert!(inst.replay(&[4]).is_err());
    }

    #[test]
    fn file_formats_round_trip() {
        let text = "# classic\n1 111\n10111 10\n\n10 0\n";
        let inst = PCPInstance::parse(text).unwrap();
        assert_eq!(inst.len(), 3);
        assert_eq!(PCPInstance::parse(&inst.render()).unwrap(), inst);

        let text = "# collatz\n2\n1 0\n6 4\n";
        let inst = ModuloInstance::parse(text).unwrap();
        assert_eq!(inst.modulus(), 2);
        assert_eq!(inst.rule(1), (6, 4));
        assert_eq!(ModuloInstance::parse(&inst.render()).unwrap(), inst);
        assert!(ModuloInstance::parse("1\n0 0\n").is_err());
        assert!(ModuloInstance::parse("2\n0 0\n").is_err());
    }
}
