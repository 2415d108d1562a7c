//! Parsers for field presentations, field elements and differential
//! polynomials.
//!
//! Expression grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' int]
//! atom   := int | name '\''* | 'd' '(' name ',' int ')' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero elements of `K`.

use sepdiff_core::diffpoly::{DerivVar, DiffPoly, DiffRing, Ring};
use sepdiff_core::field::{make_presentation, Field, RationalFunction, DIFF_GEN};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {position}: {message}")]
pub struct ParseError {
    /// `ParseError` for syntax problems, otherwise the kernel error name.
    pub kind: &'static str,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            kind: "ParseError",
            position,
            message: message.into(),
        }
    }

    fn kernel(position: usize, err: sepdiff_core::Error) -> Self {
        ParseError {
            kind: err.name(),
            position,
            message: err.to_string(),
        }
    }
}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Name(String),
    Prime,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Name(s) => format!("name `{s}`"),
        Tok::Prime => "`'`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn tokenize(src: &str) -> PResult<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'\'' => Some(Tok::Prime),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i]
                .parse::<u64>()
                .map_err(|_| ParseError::syntax(start, "number too large"))?;
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Name(src[start..i].to_string()), start));
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            return Err(ParseError::syntax(
                start,
                format!("unexpected character `{ch}`"),
            ));
        }
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

struct Cursor {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Cursor {
    fn new(src: &str) -> PResult<Self> {
        Ok(Cursor {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", describe(t))))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        ParseError::syntax(
            self.pos(),
            format!("{what}, found {}", describe(self.peek())),
        )
    }

    fn int(&mut self) -> PResult<u64> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("expected a number")),
        }
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Name(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("expected a name")),
        }
    }

    fn finish(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("expected end of input"))
        }
    }
}

/// `GF(p)(c1,...;t)` or `GF(p)(c1,...)`.
pub fn parse_field(text: &str) -> PResult<Field> {
    let mut cur = Cursor::new(text)?;
    let start = cur.pos();
    match cur.name()?.as_str() {
        "GF" => {}
        other => {
            return Err(ParseError::syntax(
                start,
                format!("expected `GF`, found `{other}`"),
            ));
        }
    }
    cur.expect(&Tok::LParen)?;
    let p_pos = cur.pos();
    let p = cur.int()?;
    cur.expect(&Tok::RParen)?;
    cur.expect(&Tok::LParen)?;
    let mut names: Vec<(String, usize)> = Vec::new();
    let mut has_t = false;
    if !matches!(cur.peek(), Tok::RParen | Tok::Semi) {
        loop {
            let pos = cur.pos();
            names.push((cur.name()?, pos));
            if !cur.eat(&Tok::Comma) {
                break;
            }
        }
    }
    if cur.eat(&Tok::Semi) {
        let pos = cur.pos();
        let t = cur.name()?;
        if t != DIFF_GEN {
            return Err(ParseError::syntax(
                pos,
                format!("expected `t` after `;`, found `{t}`"),
            ));
        }
        has_t = true;
    }
    cur.expect(&Tok::RParen)?;
    cur.finish()?;
    let plain: Vec<&str> = names.iter().map(|(n, _)| n.as_str()).collect();
    make_presentation(p, &plain, has_t).map_err(|e| {
        let pos = match &e {
            sepdiff_core::Error::NonPrimeCharacteristic(_) => p_pos,
            sepdiff_core::Error::DuplicateGeneratorName(n)
            | sepdiff_core::Error::ReservedName(n)
            | sepdiff_core::Error::InvalidName(n) => names
                .iter()
                .rev()
                .find(|(m, _)| m == n)
                .map_or(start, |(_, p)| *p),
            _ => start,
        };
        ParseError::kernel(pos, e)
    })
}

struct ExprParser<'a> {
    cur: Cursor,
    ring: &'a Ring,
}

impl ExprParser<'_> {
    fn expr(&mut self) -> PResult<DiffPoly> {
        let mut acc = if self.cur.eat(&Tok::Minus) {
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.cur.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.cur.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<DiffPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.cur.eat(&Tok::Star) {
                if *self.cur.peek() == Tok::Star {
                    return Err(self.cur.unexpected("`**` is not an operator; use `^`"));
                }
                acc = &acc * &self.unary()?;
            } else if *self.cur.peek() == Tok::Slash {
                self.cur.bump();
                let pos = self.cur.pos();
                let d = self.unary()?;
                let Some(k) = d.as_k_element() else {
                    return Err(ParseError::syntax(
                        pos,
                        "can only divide by elements of the coefficient field",
                    ));
                };
                let Some(inv) = k.inv() else {
                    return Err(ParseError::syntax(pos, "division by zero"));
                };
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<DiffPoly> {
        if self.cur.eat(&Tok::Minus) {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> PResult<DiffPoly> {
        let base = self.atom()?;
        if self.cur.eat(&Tok::Caret) {
            let pos = self.cur.pos();
            let e = self.cur.int()?;
            let e = u32::try_from(e).map_err(|_| ParseError::syntax(pos, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<DiffPoly> {
        let pos = self.cur.pos();
        match self.cur.peek().clone() {
            Tok::Int(n) => {
                self.cur.bump();
                let p = self.ring.field().characteristic() as u64;
                Ok(DiffPoly::scalar(self.ring, (n % p) as i64))
            }
            Tok::LParen => {
                self.cur.bump();
                let e = self.expr()?;
                self.cur.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Name(n) if n == "d" && *self.cur.peek2() == Tok::LParen => {
                self.cur.bump();
                self.cur.bump();
                let vpos = self.cur.pos();
                let v = self.cur.name()?;
                let var = self.variable(&v, vpos)?;
                self.cur.expect(&Tok::Comma)?;
                let kpos = self.cur.pos();
                let k = u32::try_from(self.cur.int()?)
                    .map_err(|_| ParseError::syntax(kpos, "derivative order too large"))?;
                self.cur.expect(&Tok::RParen)?;
                Ok(DiffPoly::var(self.ring, DerivVar::new(var, k)))
            }
            Tok::Name(n) => {
                self.cur.bump();
                let mut primes = 0u32;
                while self.cur.eat(&Tok::Prime) {
                    primes += 1;
                }
                if let Some(v) = self.ring.var_index(&n) {
                    return Ok(DiffPoly::var(self.ring, DerivVar::new(v, primes)));
                }
                if let Some(g) = RationalFunction::named(self.ring.field(), &n) {
                    if primes > 0 {
                        return Err(ParseError::syntax(
                            pos,
                            format!("`{n}` is a field generator and cannot be primed"),
                        ));
                    }
                    return Ok(DiffPoly::constant(self.ring, g));
                }
                Err(ParseError::syntax(pos, format!("unknown name `{n}`")))
            }
            _ => Err(self.cur.unexpected("expected an operand")),
        }
    }

    fn variable(&self, name: &str, pos: usize) -> PResult<u32> {
        self.ring.var_index(name).ok_or_else(|| {
            ParseError::syntax(pos, format!("`{name}` is not a differential indeterminate"))
        })
    }
}

/// Parses a differential polynomial over `ring`.
pub fn parse_dpoly(text: &str, ring: &Ring) -> PResult<DiffPoly> {
    let mut p = ExprParser {
        cur: Cursor::new(text)?,
        ring,
    };
    let e = p.expr()?;
    p.cur.finish()?;
    Ok(e)
}

/// Parses an element of `K`.
pub fn parse_element(text: &str, field: &Field) -> PResult<RationalFunction> {
    let ring = DiffRing::new(field, &[] as &[&str]).expect("empty ring is always valid");
    let poly = parse_dpoly(text, &ring)?;
    Ok(poly.as_k_element().expect("no indeterminates to occur"))
}

/// Splits a comma-separated list at top-level commas; the empty string and
/// `()` give an empty list. Returns `(item, offset)` pairs.
pub fn split_list(text: &str) -> Vec<(&str, usize)> {
    let trimmed = text.trim();
    let base = text.len() - text.trim_start().len();
    let (inner, off) = match trimmed.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        Some(s) if balanced(s) => (s, base + 1),
        _ => (trimmed, base),
    };
    if inner.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((&inner[start..i], off + start));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((&inner[start..], off + start));
    out
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// Parses a comma-separated tuple of field elements.
pub fn parse_tuple(text: &str, field: &Field) -> PResult<Vec<RationalFunction>> {
    split_list(text)
        .into_iter()
        .map(|(item, off)| {
            parse_element(item, field).map_err(|mut e| {
                e.position += off;
                e
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(field: &str) -> Ring {
        DiffRing::univariate(&parse_field(field).unwrap())
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("GF(5)(;t)").unwrap().to_string(), "GF(5)(;t)");
        let k = parse_field("GF(3)(c;t)").unwrap();
        assert_eq!(k.constant_gens(), ["c"]);
        assert!(k.has_diff_gen());
        let k = parse_field("GF(2)(t1, t2)").unwrap();
        assert!(!k.has_diff_gen());
        let e = parse_field("GF(4)(;t)").unwrap_err();
        assert_eq!(e.kind, "NonPrimeCharacteristic");
        assert_eq!(e.position, 3);
        assert_eq!(parse_field("GF(5)(t)").unwrap_err().kind, "ReservedName");
        assert_eq!(parse_field("GF(5)(;s)").unwrap_err().kind, "ParseError");
        assert_eq!(
            parse_field("GF(5)(c,c;t)").unwrap_err().kind,
            "DuplicateGeneratorName"
        );
    }

    #[test]
    fn expressions() {
        let r = ring("GF(5)(;t)");
        let f = parse_dpoly("x'^2 - x", &r).unwrap();
        assert_eq!(f, &DiffPoly::x(&r, 1).pow(2) - &DiffPoly::x(&r, 0));
        let t = DiffPoly::constant(&r, RationalFunction::named(r.field(), "t").unwrap());
        let g = parse_dpoly("d(x,2) + t*x", &r).unwrap();
        assert_eq!(g, &DiffPoly::x(&r, 2) + &(&t * &DiffPoly::x(&r, 0)));
        assert_eq!(parse_dpoly("x''", &r).unwrap(), DiffPoly::x(&r, 2));
        let e = parse_dpoly("x' ** 2", &r).unwrap_err();
        assert_eq!(e.kind, "ParseError");
        assert_eq!(e.position, 4);
        assert!(parse_dpoly("x/x", &r).is_err());
        assert!(parse_dpoly("t'", &r).is_err());
        assert!(parse_dpoly("y", &r).is_err());
        assert_eq!(parse_dpoly("-x + x", &r).unwrap(), DiffPoly::zero(&r));
        assert_eq!(parse_dpoly("7", &r).unwrap(), DiffPoly::scalar(&r, 2));
    }

    #[test]
    fn elements_and_tuples() {
        let k = parse_field("GF(3)(c;t)").unwrap();
        let a = parse_element("(t + 1)/c", &k).unwrap();
        assert_eq!(a.to_string(), "(t + 1)/c");
        let v = parse_tuple("(c, t^2)", &k).unwrap();
        assert_eq!(v.len(), 2);
        assert!(parse_tuple("", &k).unwrap().is_empty());
        assert!(parse_tuple("()", &k).unwrap().is_empty());
        let e = parse_tuple("c, q", &k).unwrap_err();
        assert_eq!(e.position, 3);
        assert!(parse_element("x", &k).is_err());
    }

    #[test]
    fn printed_forms_read_back() {
        let k = parse_field("GF(3)(c;t)").unwrap();
        for s in [
            "1/t^2",
            "1/(t*c)",
            "2*t*c/(t + 1)",
            "(t + 2)/(t^2*c + c)",
            "2/t",
        ] {
            let a = parse_element(s, &k).unwrap();
            assert_eq!(parse_element(&a.to_string(), &k).unwrap(), a, "{s}");
        }
    }
}
