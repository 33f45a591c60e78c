//! Text syntax for polynomials, maps and points.
//!
//! Variables are `x1, x2, …` (also `X1` or subscripted `X₁`), with `t` as a
//! synonym for `x1`. Roots of unity are written `z5`, `zeta5` or `ζ5`.
//! Products may be implicit (`2x1x2`), powers use `^` or superscripts, and
//! `/` divides by a nonzero constant.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Zeta(u64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Sup(u32),
    LParen,
    RParen,
    Comma,
}

fn subscript_digit(c: char) -> Option<u32> {
    let d = c as u32;
    (0x2080..=0x2089).contains(&d).then(|| d - 0x2080)
}

fn superscript_digit(c: char) -> Option<u32> {
    match c {
        '⁰' => Some(0),
        '¹' => Some(1),
        '²' => Some(2),
        '³' => Some(3),
        '⁴'..='⁹' => Some(c as u32 - '⁴' as u32 + 4),
        _ => None,
    }
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |msg: String| Error::Parse(msg);
    let read_index = |i: &mut usize| -> Option<u64> {
        let mut v: Option<u64> = None;
        while *i < chars.len() {
            let d = chars[*i].to_digit(10).or_else(|| subscript_digit(chars[*i]));
            match d {
                Some(d) => {
                    v = Some(v.unwrap_or(0).checked_mul(10)?.checked_add(d as u64)?);
                    *i += 1;
                }
                None => break,
            }
        }
        v
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().unwrap()));
            continue;
        }
        if superscript_digit(c).is_some() {
            let mut e = 0u32;
            while i < chars.len() {
                match superscript_digit(chars[i]) {
                    Some(d) => {
                        e = e * 10 + d;
                        i += 1;
                    }
                    None => break,
                }
            }
            out.push(Tok::Sup(e));
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let idx = read_index(&mut i);
            match (word.as_str(), idx) {
                ("x" | "X", Some(k)) if k >= 1 => out.push(Tok::Var(k as usize - 1)),
                ("t", None) => out.push(Tok::Var(0)),
                ("z" | "zeta" | "ζ", Some(p)) => out.push(Tok::Zeta(p)),
                _ => return Err(err(format!("unknown identifier {word:?} at {start}"))),
            }
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' | '×' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => return Err(err(format!("unexpected character {c:?}"))),
        };
        out.push(t);
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.nvars);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() {
                        return Err(Error::Parse("division by a non-constant".into()));
                    }
                    let inv = d.constant_term().inv()?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Zeta(_) | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let mut base = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Caret) => {
                    self.pos += 1;
                    let e = match self.bump() {
                        Some(Tok::Num(n)) => u32::try_from(n.clone())
                            .map_err(|_| Error::Parse("exponent too large".into()))?,
                        _ => return Err(Error::Parse("expected exponent after '^'".into())),
                    };
                    base = base.pow(e);
                }
                Some(Tok::Sup(e)) => {
                    let e = *e;
                    self.pos += 1;
                    base = base.pow(e);
                }
                _ => return Ok(base),
            }
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.nvars;
        match self.bump().cloned() {
            Some(Tok::Num(v)) => Ok(Poly::constant(
                n,
                FieldElem::Rational(Rational::from_integer(v)),
            )),
            Some(Tok::Var(i)) => Ok(Poly::var(n, i)),
            Some(Tok::Zeta(p)) => Ok(Poly::constant(n, FieldElem::zeta(p)?)),
            Some(Tok::Minus) => Ok(-&self.power()?),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn max_var(toks: &[Tok]) -> usize {
    toks.iter()
        .filter_map(|t| match t {
            Tok::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

fn parse_list(toks: &[Tok], nvars: usize) -> Result<Vec<Poly>> {
    let mut p = Parser { toks, pos: 0, nvars };
    let mut out = Vec::new();
    loop {
        out.push(p.expr()?);
        match p.bump() {
            Some(Tok::Comma) => continue,
            None => return Ok(out),
            Some(t) => return Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Strips one pair of enclosing parentheses if they wrap the whole input.
fn strip_outer(toks: &[Tok]) -> &[Tok] {
    if toks.len() < 2 || toks[0] != Tok::LParen || toks[toks.len() - 1] != Tok::RParen {
        return toks;
    }
    let mut depth = 0i32;
    for (i, t) in toks.iter().enumerate() {
        match t {
            Tok::LParen => depth += 1,
            Tok::RParen => {
                depth -= 1;
                if depth == 0 && i != toks.len() - 1 {
                    return toks;
                }
            }
            _ => {}
        }
    }
    &toks[1..toks.len() - 1]
}

/// Parses one polynomial; `nvars` defaults to the largest variable index seen.
pub fn parse_poly(s: &str, nvars: Option<usize>) -> Result<Poly> {
    let toks = lex(s)?;
    let n = nvars.unwrap_or(0).max(max_var(&toks)).max(1);
    if let Some(k) = nvars {
        if k < max_var(&toks) {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: max_var(&toks),
            });
        }
    }
    let mut list = parse_list(&toks, n)?;
    if list.len() != 1 {
        return Err(Error::Parse("expected a single polynomial".into()));
    }
    Ok(list.pop().unwrap())
}

/// Parses `(f1, …, fm)` into a [`super::PolyMap`].
pub fn parse_polymap(s: &str, nvars: Option<usize>) -> Result<super::PolyMap> {
    let toks = lex(s)?;
    let inner = strip_outer(&toks);
    let seen = max_var(inner);
    if let Some(k) = nvars {
        if k < seen {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: seen,
            });
        }
    }
    let n = nvars.unwrap_or(0).max(seen).max(1);
    super::PolyMap::new(parse_list(inner, n)?)
}

/// Parses `(a1, …, ak)` of constant expressions.
pub fn parse_point(s: &str) -> Result<Vec<FieldElem>> {
    let toks = lex(s)?;
    let inner = strip_outer(&toks);
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    if max_var(inner) > 0 {
        return Err(Error::Parse("a point may not contain variables".into()));
    }
    parse_list(inner, 1)?
        .into_iter()
        .map(|p| Ok(p.constant_term()))
        .collect()
}

/// Parses a single constant.
pub fn parse_scalar(s: &str) -> Result<FieldElem> {
    let p = parse_poly(s, Some(1))?;
    if !p.is_constant() {
        return Err(Error::Parse(format!("not a constant: {s:?}")));
    }
    let c = p.constant_term();
    debug_assert!(!matches!(c, FieldElem::Rational(ref q) if q.denom().is_zero()));
    Ok(c)
}
