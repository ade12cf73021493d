//! Literal syntax for scalars, polynomials, forms, vectors and structure equations.
//!
//! Scalars: `n[/d][rR][/d2]`, e.g. `1/5r5`, `-1r2/2`, `3`.
//! Polynomials: sums of products of scalars, identifiers (`c1234`, `al3`), `^` powers and parentheses.
//! Forms: sums of terms `[coef ["*"]] word`, where the word is a run of distinct digits.

use crate::coeff::FromPoly;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Form, Vector};
use crate::poly::PolyK;
use crate::scalar::{mask_of, ScalarK};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num { value: ScalarK, bare: Option<String> },
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, pos: usize, expected: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.base + pos, expected: expected.to_string() })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let start = self.pos;
            if c.is_ascii_whitespace() {
                self.pos += 1;
                continue;
            }
            let tok = match c {
                b'+' => {
                    self.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    self.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    self.pos += 1;
                    Tok::Star
                }
                b'^' => {
                    self.pos += 1;
                    Tok::Caret
                }
                b'(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                b',' => {
                    self.pos += 1;
                    Tok::Comma
                }
                b'0'..=b'9' => self.number()?,
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
                }
                _ => return self.err(start, "a number, identifier, operator or parenthesis"),
            };
            out.push((self.base + start, tok));
        }
        Ok(out)
    }

    fn number(&mut self) -> Result<Tok> {
        let int = self.digits().unwrap();
        let mut num = BigRational::from_integer(int.parse::<BigInt>().unwrap());
        let mut bare = true;
        if self.peek_is(b'/') {
            let at = self.pos;
            self.pos += 1;
            let Some(d) = self.digits() else { return self.err(at + 1, "denominator digits") };
            let d: BigInt = d.parse().unwrap();
            if d == BigInt::from(0) {
                return self.err(at + 1, "nonzero denominator");
            }
            num /= BigRational::from_integer(d);
            bare = false;
        }
        let mut mask = 0u8;
        if self.peek_is(b'r') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
            let rad: u64 = self.digits().unwrap().parse().map_err(|_| Error::BadRadicand(0))?;
            mask = match mask_of(rad) {
                Some(m) if rad != 1 => m,
                _ => return Err(Error::BadRadicand(rad)),
            };
            bare = false;
            if self.peek_is(b'/') {
                let at = self.pos;
                self.pos += 1;
                let Some(d) = self.digits() else { return self.err(at + 1, "denominator digits") };
                let d: BigInt = d.parse().unwrap();
                if d == BigInt::from(0) {
                    return self.err(at + 1, "nonzero denominator");
                }
                num /= BigRational::from_integer(d);
            }
        }
        Ok(Tok::Num { value: ScalarK::radical(num, mask), bare: bare.then_some(int) })
    }

    fn peek_is(&self, c: u8) -> bool {
        self.src.get(self.pos) == Some(&c)
    }
}

fn lex(src: &str, base: usize) -> Result<Vec<(usize, Tok)>> {
    Lexer { src: src.as_bytes(), pos: 0, base }.tokens()
}

/// A parsed factor: its value, and the digit string when it could be an index word.
struct Factor {
    value: PolyK,
    word: Option<(usize, String)>,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str, base: usize) -> Result<Self> {
        Ok(Parser { toks: lex(src, base)?, i: 0, end: base + src.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), expected: expected.to_string() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn at_factor_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num { .. } | Tok::Ident(_) | Tok::LParen))
    }

    fn factor(&mut self) -> Result<Factor> {
        let pos = self.pos();
        let (mut value, word) = match self.peek().cloned() {
            Some(Tok::Num { value, bare }) => {
                self.i += 1;
                (PolyK::constant(value), bare.map(|b| (pos, b)))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                (PolyK::var(&name), None)
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("')'");
                }
                (inner, None)
            }
            _ => return self.err("a number, identifier or '('"),
        };
        if self.eat(&Tok::Caret) {
            match self.peek().cloned() {
                Some(Tok::Num { bare: Some(b), .. }) => {
                    self.i += 1;
                    let e: u32 = b.parse().map_err(|_| Error::Syntax { pos, expected: "small exponent".into() })?;
                    value = value.pow(e);
                    return Ok(Factor { value, word: None });
                }
                _ => return self.err("an integer exponent"),
            }
        }
        Ok(Factor { value, word })
    }

    fn factors(&mut self) -> Result<Vec<Factor>> {
        let mut out = vec![self.factor()?];
        loop {
            if self.eat(&Tok::Star) {
                out.push(self.factor()?);
            } else if self.at_factor_start() {
                out.push(self.factor()?);
            } else {
                return Ok(out);
            }
        }
    }

    fn expr(&mut self) -> Result<PolyK> {
        let mut neg = false;
        if self.eat(&Tok::Minus) {
            neg = true;
        } else {
            self.eat(&Tok::Plus);
        }
        let mut acc = PolyK::zero();
        loop {
            let prod = self.factors()?.into_iter().fold(PolyK::one(), |acc, f| acc.mul_ref(&f.value));
            acc = if neg { acc.sub_ref(&prod) } else { acc.add_ref(&prod) };
            if self.eat(&Tok::Plus) {
                neg = false;
            } else if self.eat(&Tok::Minus) {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn form_terms(&mut self, dim: usize, exact_len: Option<usize>) -> Result<Form<PolyK>> {
        let mut out = Form::zero(dim);
        if let Some(Tok::Num { bare: Some(b), .. }) = self.peek() {
            if b == "0" && self.toks.len() == self.i + 1 {
                self.i += 1;
                return Ok(out);
            }
        }
        let mut neg = false;
        if self.eat(&Tok::Minus) {
            neg = true;
        } else {
            self.eat(&Tok::Plus);
        }
        loop {
            let mut fs = self.factors()?;
            let last = fs.pop().unwrap();
            let Some((wpos, word)) = last.word else {
                return Err(Error::Syntax { pos: self.pos(), expected: "an index word".into() });
            };
            let coef = fs.into_iter().fold(PolyK::one(), |acc, f| acc.mul_ref(&f.value));
            let basis = word_form(&word, wpos, dim, exact_len)?;
            let term = basis.scale(&coef);
            out = if neg { out.sub(&term) } else { out.add(&term) };
            if self.eat(&Tok::Plus) {
                neg = false;
            } else if self.eat(&Tok::Minus) {
                neg = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn finish(&self) -> Result<()> {
        if self.i < self.toks.len() {
            return self.err("end of input");
        }
        Ok(())
    }
}

fn word_form(word: &str, pos: usize, dim: usize, exact_len: Option<usize>) -> Result<Form<PolyK>> {
    if let Some(n) = exact_len {
        if word.len() != n {
            return Err(Error::Syntax { pos, expected: format!("an index word of {n} digits") });
        }
    }
    let mut idx = Vec::with_capacity(word.len());
    for ch in word.chars() {
        let i = ch.to_digit(10).unwrap() as usize;
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        if idx.contains(&i) {
            return Err(Error::DuplicateIndex { index: i, word: word.to_string() });
        }
        idx.push(i);
    }
    Ok(Form::basis(dim, &idx))
}

pub fn parse_scalar(text: &str) -> Result<ScalarK> {
    let p = parse_poly(text)?;
    p.as_constant().ok_or(Error::NotConstant(text.to_string()))
}

pub fn parse_poly(text: &str) -> Result<PolyK> {
    let mut p = Parser::new(text, 0)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_form<C: FromPoly>(text: &str, dim: usize) -> Result<Form<C>> {
    parse_form_at(text, dim, 0, None)?.try_map(C::from_poly)
}

fn parse_form_at(text: &str, dim: usize, base: usize, exact_len: Option<usize>) -> Result<Form<PolyK>> {
    let mut p = Parser::new(text, base)?;
    if p.toks.is_empty() {
        return Err(Error::Syntax { pos: base, expected: "a form".into() });
    }
    let f = p.form_terms(dim, exact_len)?;
    p.finish()?;
    Ok(f)
}

/// A vector literal: a form literal whose words are single basis indices.
pub fn parse_vector<C: FromPoly>(text: &str, dim: usize) -> Result<Vector<C>> {
    let f = parse_form_at(text, dim, 0, Some(1))?;
    let coords = (1..=dim)
        .map(|i| C::from_poly(&f.coeff(Blade::from_indices(&[i]))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Vector::new(coords))
}

/// Splits `(e1, e2, …)` into entries with their byte offsets.
pub fn split_tuple(text: &str) -> Result<Vec<(usize, &str)>> {
    let bytes = text.as_bytes();
    let open = bytes.iter().position(|c| !c.is_ascii_whitespace());
    let Some(open) = open.filter(|&i| bytes[i] == b'(') else {
        return Err(Error::Syntax { pos: open.unwrap_or(0), expected: "'('".into() });
    };
    let close = bytes.iter().rposition(|c| !c.is_ascii_whitespace()).unwrap();
    if bytes[close] != b')' || close == open {
        return Err(Error::Syntax { pos: close + 1, expected: "')'".into() });
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = open + 1;
    for i in open + 1..close {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..close]));
    Ok(out)
}

/// Parses structure equations `(0,0,12,…)` into the list of 2-forms d e^i.
pub fn parse_structure_equations(text: &str) -> Result<Vec<Form<ScalarK>>> {
    let entries = split_tuple(text)?;
    let dim = entries.len();
    entries
        .into_iter()
        .map(|(off, s)| {
            if s.trim().is_empty() {
                return Err(Error::Syntax { pos: off, expected: "an entry".into() });
            }
            parse_form_at(s, dim, off, Some(2))?.try_map(ScalarK::from_poly)
        })
        .collect()
}
