//! The group description mini-language, and naming of small groups.
//!
//! ```text
//! desc := atom ("x" atom)*
//! atom := "C"n | "D"n | "Q"n | "S"n | "A"n | "E"p"^"k | "H"p | "perm{" gens "}"
//! gens := gen ("," gen)*      gen := ("(" point (" "|",") ... ")")+
//! ```
//!
//! `D`n and `Q`n take the group order. Points in `perm{..}` are 1-based. Whitespace
//! is ignored except as a separator between points inside a cycle.

use crate::error::{Error, Result};
use crate::group::{Caps, FiniteGroup};
use crate::iso::is_isomorphic;
use crate::named::{make_named_with, GroupKind};
use crate::perm::Permutation;

pub fn parse_descriptor(text: &str) -> Result<FiniteGroup> {
    parse_descriptor_with(text, Caps::default())
}

pub fn parse_descriptor_with(text: &str, caps: Caps) -> Result<FiniteGroup> {
    let mut parser = Parser {
        text: text.as_bytes(),
        pos: 0,
        caps,
    };
    let mut group = parser.atom()?;
    loop {
        parser.skip_ws();
        if parser.at_end() {
            return Ok(group);
        }
        if !parser.eat(b'x') {
            return Err(parser.error("expected 'x' between factors"));
        }
        let rhs = parser.atom()?;
        group = group.direct_product(&rhs)?;
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    caps: Caps,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                message: "number out of range".into(),
            })
    }

    fn atom(&mut self) -> Result<FiniteGroup> {
        self.skip_ws();
        let start = self.pos;
        let Some(tag) = self.peek() else {
            return Err(self.error("expected a group"));
        };
        if self.text[self.pos..].starts_with(b"perm") {
            self.pos += 4;
            return self.perm_group();
        }
        self.pos += 1;
        let kind = match tag {
            b'C' => GroupKind::Cyclic(self.number()?),
            b'D' => GroupKind::Dihedral(self.number()?),
            b'Q' => GroupKind::Quaternion(self.number()?),
            b'S' => GroupKind::Symmetric(self.number()?),
            b'A' => GroupKind::Alternating(self.number()?),
            b'H' => GroupKind::Heisenberg(self.number()? as u64),
            b'E' => {
                let p = self.number()? as u64;
                if !self.eat(b'^') {
                    return Err(self.error("expected '^' in elementary abelian group"));
                }
                let rank = self.number()? as u32;
                GroupKind::ElementaryAbelian { p, rank }
            }
            _ => {
                self.pos = start;
                return Err(self.error("unknown group constructor"));
            }
        };
        make_named_with(kind, self.caps).map_err(|e| match e {
            Error::BadParameter(message) => Error::Parse {
                pos: start,
                message,
            },
            other => other,
        })
    }

    fn perm_group(&mut self) -> Result<FiniteGroup> {
        if !self.eat(b'{') {
            return Err(self.error("expected '{' after perm"));
        }
        let mut gens: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut degree = 1;
        if !self.eat(b'}') {
            loop {
                let mut cycles = Vec::new();
                self.skip_ws();
                while self.peek() == Some(b'(') {
                    self.pos += 1;
                    let mut cycle = Vec::new();
                    loop {
                        self.skip_ws();
                        match self.peek() {
                            Some(b')') => {
                                self.pos += 1;
                                break;
                            }
                            Some(b',') => self.pos += 1,
                            Some(c) if c.is_ascii_digit() => {
                                let at = self.pos;
                                let pt = self.number()?;
                                if pt == 0 {
                                    return Err(Error::Parse {
                                        pos: at,
                                        message: "points are numbered from 1".into(),
                                    });
                                }
                                degree = degree.max(pt);
                                cycle.push(pt - 1);
                            }
                            _ => return Err(self.error("expected a point or ')'")),
                        }
                    }
                    cycles.push(cycle);
                    self.skip_ws();
                }
                if cycles.is_empty() {
                    return Err(self.error("expected a cycle"));
                }
                gens.push(cycles);
                if self.eat(b'}') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.error("expected ',' or '}'"));
                }
            }
        }
        let at = self.pos;
        let perms = gens
            .iter()
            .map(|cycles| Permutation::from_cycles(degree, cycles))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse {
                pos: at,
                message: e.to_string(),
            })?;
        FiniteGroup::close_generators_with(&perms, degree, self.caps)
    }
}

/// A descriptor for `g` when it is isomorphic to a named group or a product
/// of two named groups of small order; otherwise `"[order n]"`.
pub fn identify(g: &FiniteGroup) -> String {
    let n = g.order();
    if n == 1 {
        return "C1".into();
    }
    for name in candidate_names(n) {
        if let Ok(h) = parse_descriptor(&name) {
            if is_isomorphic(g, &h).is_some() {
                return name;
            }
        }
    }
    format!("[order {n}]")
}

fn atom_names(n: usize) -> Vec<String> {
    let mut v = vec![format!("C{n}")];
    if let Some((p, k)) = prime_power(n) {
        if k >= 2 {
            v.push(format!("E{p}^{k}"));
        }
        if k == 3 && p > 2 {
            v.push(format!("H{p}"));
        }
    }
    let mut f = 1;
    for k in 1..=6 {
        f *= k;
        if f == n && k >= 3 {
            v.push(format!("S{k}"));
        }
        if f / 2 == n && k >= 4 {
            v.push(format!("A{k}"));
        }
    }
    if n >= 4 && n.is_multiple_of(2) {
        v.push(format!("D{n}"));
    }
    if n >= 8 && n.is_multiple_of(4) {
        v.push(format!("Q{n}"));
    }
    v
}

fn candidate_names(n: usize) -> Vec<String> {
    let mut names = atom_names(n);
    // two-factor products, larger factor first
    for a in (2..n).rev() {
        if !n.is_multiple_of(a) {
            continue;
        }
        let b = n / a;
        if b < 2 || b > a {
            continue;
        }
        for first in atom_names(a) {
            for second in atom_names(b) {
                names.push(format!("{first} x {second}"));
            }
        }
    }
    names
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms_and_products() {
        assert_eq!(parse_descriptor("S3").unwrap().order(), 6);
        assert_eq!(parse_descriptor("Q12 x C2").unwrap().order(), 24);
        assert_eq!(parse_descriptor(" D6x C4 ").unwrap().order(), 24);
        assert_eq!(parse_descriptor("E3^3").unwrap().order(), 27);
        assert_eq!(parse_descriptor("H3").unwrap().order(), 27);
        assert_eq!(parse_descriptor("C2 x C2 x C2").unwrap().order(), 8);
    }

    #[test]
    fn parses_permutations() {
        let g = parse_descriptor("perm{(1 2 3),(1 2)}").unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.degree(), 3);
        let f20 = parse_descriptor("perm{(1 2 3 4 5), (2 3 5 4)}").unwrap();
        assert_eq!(f20.order(), 20);
        let v4 = parse_descriptor("perm{(1 2)(3 4),(1 3)(2 4)}").unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(parse_descriptor("perm{}").unwrap().order(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_descriptor("S3 y C2").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                pos: 3,
                message: "expected 'x' between factors".into()
            }
        );
        assert!(matches!(
            parse_descriptor("Z5"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_descriptor("D5"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_descriptor("C2 x"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_descriptor("perm{(0 1)}"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_descriptor("perm{(1 2 1)}"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_descriptor("E4^2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn names() {
        assert_eq!(
            identify(&parse_descriptor("perm{(1 2 3),(1 2)}").unwrap()),
            "S3"
        );
        assert_eq!(identify(&parse_descriptor("D8").unwrap()), "D8");
        assert_eq!(identify(&parse_descriptor("C3 x C2").unwrap()), "C6");
        assert_eq!(identify(&parse_descriptor("C2 x C2").unwrap()), "E2^2");
        assert_eq!(identify(&parse_descriptor("Q8").unwrap()), "Q8");
        assert_eq!(identify(&parse_descriptor("C2 x Q12").unwrap()), "Q12 x C2");
        assert_eq!(
            identify(&parse_descriptor("perm{(1 2 3 4 5),(2 3 5 4)}").unwrap()),
            "[order 20]"
        );
    }
}
