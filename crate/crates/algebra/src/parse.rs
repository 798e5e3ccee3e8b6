//! Text formats: ring header lines, polynomials, ideal files.
//!
//! Polynomial grammar: `+`/`-` separated terms, factors joined by optional
//! `*`, `^` for powers, decimal coefficients, parentheses. Juxtaposed
//! variable names (`wq`) are split against the ring's variable list.

use std::sync::Arc;

use crate::field::{Field, PrimeField, RationalField};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::{AlgebraError, Result};

/// Parsed contents of a `ring ...` header line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHeader {
    /// 0 selects the rationals.
    pub p: u64,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
}

impl RingHeader {
    pub fn parse(line: &str) -> Result<Self> {
        let mut words = line.split_whitespace();
        if words.next() != Some("ring") {
            return Err(AlgebraError::Parse("header must start with `ring`".into()));
        }
        let mut p = None;
        let mut vars = None;
        let mut weights = None;
        let mut order = MonomialOrder::Grevlex;
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| AlgebraError::Parse(format!("expected key=value, got {w:?}")))?;
            match k {
                "p" => p = Some(v.parse::<u64>().map_err(|_| AlgebraError::Parse(format!("bad prime {v:?}")))?),
                "vars" => vars = Some(v.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>()),
                "weights" => {
                    weights = Some(
                        v.split(',')
                            .map(|s| s.trim().parse::<u32>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(|_| AlgebraError::Parse(format!("bad weights {v:?}")))?,
                    )
                }
                "order" => {
                    order = MonomialOrder::parse(v).ok_or_else(|| AlgebraError::Parse(format!("unknown order {v:?}")))?
                }
                _ => return Err(AlgebraError::Parse(format!("unknown header key {k:?}"))),
            }
        }
        let vars = vars.ok_or_else(|| AlgebraError::Parse("missing vars=".into()))?;
        let weights = weights.unwrap_or_else(|| vec![1; vars.len()]);
        Ok(RingHeader {
            p: p.ok_or_else(|| AlgebraError::Parse("missing p=".into()))?,
            vars,
            weights,
            order,
        })
    }

    pub fn prime_ring(&self) -> Result<Arc<Ring<PrimeField>>> {
        let p = u32::try_from(self.p).map_err(|_| AlgebraError::InvalidRing("prime too large".into()))?;
        let field = PrimeField::new(p).ok_or_else(|| AlgebraError::InvalidRing(format!("{p} is not a usable prime")))?;
        Ring::new(self.vars.clone(), self.weights.clone(), field, self.order)
    }

    pub fn rational_ring(&self) -> Result<Arc<Ring<RationalField>>> {
        if self.p != 0 {
            return Err(AlgebraError::InvalidRing("rational ring needs p=0".into()));
        }
        Ring::new(self.vars.clone(), self.weights.clone(), RationalField, self.order)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // rational coefficients such as 3/4
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Tok::Num(chars[st..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let st = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[st..i].iter().collect()));
            }
            _ => return Err(AlgebraError::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// Splits an identifier into a product of ring variables, preferring the
/// longest names; returns variable indices.
fn segment<F: Field>(ring: &Ring<F>, ident: &str) -> Option<Vec<usize>> {
    if let Some(i) = ring.var_index(ident) {
        return Some(vec![i]);
    }
    let mut cands: Vec<(usize, &str)> = ring.names().iter().map(|n| n.as_str()).enumerate().collect();
    cands.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
    fn rec(rest: &str, cands: &[(usize, &str)], acc: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for &(i, n) in cands {
            if let Some(tail) = rest.strip_prefix(n) {
                acc.push(i);
                if rec(tail, cands, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if rec(ident, &cands, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<Ring<F>>,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn sum(&mut self) -> Result<Polynomial<F>> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if neg { acc.try_sub(&t)? } else { acc.try_add(&t)? };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.try_mul(&f)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| AlgebraError::Parse(format!("bad exponent {n}")))?;
                    base.pow(e)
                }
                _ => Err(AlgebraError::Parse("exponent must be a decimal integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => {
                let c = self
                    .ring
                    .field()
                    .parse_elem(&n)
                    .ok_or_else(|| AlgebraError::Parse(format!("bad coefficient {n}")))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(id)) => {
                let idx = segment(self.ring, &id).ok_or_else(|| AlgebraError::Parse(format!("unknown variable {id:?}")))?;
                let mut acc = Polynomial::one(self.ring);
                for i in idx {
                    acc = acc.try_mul(&Polynomial::var(self.ring, i))?;
                }
                Ok(acc)
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                if self.toks.get(self.pos) != Some(&Tok::RParen) {
                    return Err(AlgebraError::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Minus) => {
                let a = self.power()?;
                Ok(-&a)
            }
            other => Err(AlgebraError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_polynomial<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> Result<Polynomial<F>> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse("empty polynomial".into()));
    }
    let mut p = Parser { ring, toks, pos: 0 };
    let out = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(AlgebraError::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_polynomial_list<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> Result<Vec<Polynomial<F>>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_polynomial(ring, t))
        .collect()
}

/// Splits an ideal file into its header and generator lines. Blank lines
/// and `#` comments are skipped; trailing `,` or `;` is tolerated.
pub fn split_ideal_file(text: &str) -> Result<(RingHeader, Vec<String>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = RingHeader::parse(lines.next().ok_or_else(|| AlgebraError::Parse("empty ideal file".into()))?)?;
    let gens = lines
        .map(|l| l.trim_end_matches([',', ';']).trim().to_string())
        .filter(|l| !l.is_empty())
        .collect();
    Ok((header, gens))
}

pub fn parse_generators<F: Field>(ring: &Arc<Ring<F>>, lines: &[String]) -> Result<Vec<Polynomial<F>>> {
    lines.iter().map(|l| parse_polynomial(ring, l)).collect()
}

/// Renders a ring header followed by one polynomial per line.
pub fn format_ideal_file<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>]) -> String {
    let mut s = ring.header();
    s.push('\n');
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_and_coefficients() {
        let r = Ring::standard(&["x", "z", "t", "u", "v", "w", "p", "q"], PrimeField::new(32003).unwrap());
        let a = parse_polynomial(&r, "tw-2xp+2zp-tp-2zq").unwrap();
        let b = parse_polynomial(&r, "t*w - 2*x*p + 2*z*p - t*p - 2*z*q").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn parentheses_and_powers() {
        let r = Ring::standard(&["x", "y"], PrimeField::new(7).unwrap());
        let a = parse_polynomial(&r, "(x+y)^2").unwrap();
        assert_eq!(a, parse_polynomial(&r, "x^2+2xy+y^2").unwrap());
        assert!(parse_polynomial(&r, "x+").is_err());
        assert!(parse_polynomial(&r, "q").is_err());
    }

    #[test]
    fn display_roundtrip() {
        let r = Ring::standard(&["x0", "x1", "x2"], PrimeField::new(32003).unwrap());
        let a = parse_polynomial(&r, "-3x0^2x1 + 5 x2^3 - 7").unwrap();
        assert_eq!(parse_polynomial(&r, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn header_and_file() {
        let text = "ring p=7 vars=x,y,u weights=1,1,2 order=elim:1\n# comment\nx^2-u,\ny\n";
        let (h, lines) = split_ideal_file(text).unwrap();
        assert_eq!(h.order, MonomialOrder::Elimination(1));
        let r = h.prime_ring().unwrap();
        let g = parse_generators(&r, &lines).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g[0].is_homogeneous());
        let q = RingHeader::parse("ring p=0 vars=a,b").unwrap().rational_ring().unwrap();
        let f = parse_polynomial(&q, "1/2a - b").unwrap();
        assert_eq!(f.to_string(), "1/2*a-b");
    }
}
