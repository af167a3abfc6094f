//! Recursive-descent parsers for ring expressions and element literals.
//!
//! ```text
//! ring    := product
//! product := postfix ("*" postfix)*
//! postfix := primary ("[" ident "]" ("/(" poly ")")?)*
//! primary := "Z" | "Z/" nat | "Q" | "Frac(" ring ")" | "(" ring ")"
//!
//! expr    := ("+" | "-")? term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" nat)?
//! atom    := integer | ident | "(" expr ")" | "(" expr "," expr ")"
//! ```

use num_bigint::BigInt;

use super::{Ring, Value};
use crate::error::{Error, ParseError};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    /// Offset of `src` inside the user's original text.
    origin: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, origin: usize) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
            origin,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.origin + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// Index just past the parenthesis closing the one at `self.pos - 1`.
    fn matching_paren(&self) -> Option<usize> {
        let mut depth = 1;
        for (i, &c) in self.src[self.pos..].iter().enumerate() {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(self.pos + i);
                    }
                }
                _ => {}
            }
        }
        None
    }
}

// ----- rings -------------------------------------------------------------

pub(crate) fn parse_ring(text: &str) -> Result<Ring, Error> {
    let mut cur = Cursor::new(text, 0);
    let ring = ring_product(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input").into());
    }
    Ok(ring)
}

fn ring_product(cur: &mut Cursor) -> Result<Ring, Error> {
    let mut left = ring_postfix(cur)?;
    while cur.eat(b'*') {
        let right = ring_postfix(cur)?;
        left = Ring::product(&left, &right)?;
    }
    Ok(left)
}

fn ring_postfix(cur: &mut Cursor) -> Result<Ring, Error> {
    let mut ring = ring_primary(cur)?;
    while cur.eat(b'[') {
        let var = cur.ident().ok_or_else(|| cur.err("expected a variable name"))?;
        cur.expect(b']')?;
        let poly = Ring::polynomial(&ring, var)?;
        let save = cur.pos;
        if cur.eat(b'/') {
            cur.expect(b'(')?;
            let end = cur
                .matching_paren()
                .ok_or_else(|| cur.err("unbalanced parenthesis in modulus"))?;
            let inner = std::str::from_utf8(&cur.src[cur.pos..end]).unwrap();
            let modulus = parse_element_at(&poly, inner, cur.origin + cur.pos)?;
            cur.pos = end + 1;
            ring = Ring::quotient(&poly, &modulus)?;
        } else {
            cur.pos = save;
            ring = poly;
        }
    }
    Ok(ring)
}

fn ring_primary(cur: &mut Cursor) -> Result<Ring, Error> {
    if cur.eat(b'(') {
        let r = ring_product(cur)?;
        cur.expect(b')')?;
        return Ok(r);
    }
    let start = cur.pos;
    match cur.ident() {
        Some("Z") => {
            let save = cur.pos;
            if cur.eat(b'/') {
                if let Some(d) = cur.digits() {
                    let n: u64 = d
                        .parse()
                        .map_err(|_| ParseError::new(cur.origin + save, "modulus too large"))?;
                    return Ring::modular(n);
                }
                return Err(cur.err("expected a modulus after 'Z/'").into());
            }
            cur.pos = save;
            Ok(Ring::integers())
        }
        Some("Q") => Ok(Ring::rationals()),
        Some("Frac") => {
            cur.expect(b'(')?;
            let base = ring_product(cur)?;
            cur.expect(b')')?;
            Ring::fraction(&base)
        }
        Some(other) => Err(ParseError::new(
            cur.origin + start,
            format!("unknown ring '{other}' (expected Z, Q, Z/N, Frac(...))"),
        )
        .into()),
        None => Err(cur.err("expected a ring").into()),
    }
}

// ----- elements ----------------------------------------------------------

#[derive(Debug)]
enum Expr {
    Int(BigInt),
    Var(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
    Pair(Box<Expr>, Box<Expr>, usize),
}

fn expr(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = if cur.eat(b'-') {
        Expr::Neg(Box::new(term(cur)?))
    } else {
        cur.eat(b'+');
        term(cur)?
    };
    loop {
        if cur.eat(b'+') {
            lhs = Expr::Add(Box::new(lhs), Box::new(term(cur)?));
        } else if cur.eat(b'-') {
            lhs = Expr::Sub(Box::new(lhs), Box::new(term(cur)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn term(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = unary(cur)?;
    loop {
        if cur.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(unary(cur)?));
        } else if cur.peek() == Some(b'/') {
            let at = cur.origin + cur.pos;
            cur.pos += 1;
            lhs = Expr::Div(Box::new(lhs), Box::new(unary(cur)?), at);
        } else {
            return Ok(lhs);
        }
    }
}

fn unary(cur: &mut Cursor) -> Result<Expr, ParseError> {
    if cur.eat(b'-') {
        return Ok(Expr::Neg(Box::new(unary(cur)?)));
    }
    power(cur)
}

fn power(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let base = atom(cur)?;
    if cur.eat(b'^') {
        let d = cur.digits().ok_or_else(|| cur.err("expected an exponent"))?;
        let k: u32 = d.parse().map_err(|_| cur.err("exponent too large"))?;
        return Ok(Expr::Pow(Box::new(base), k));
    }
    Ok(base)
}

fn atom(cur: &mut Cursor) -> Result<Expr, ParseError> {
    match cur.peek() {
        Some(b'(') => {
            let at = cur.origin + cur.pos;
            cur.pos += 1;
            let first = expr(cur)?;
            if cur.eat(b',') {
                let second = expr(cur)?;
                cur.expect(b')')?;
                return Ok(Expr::Pair(Box::new(first), Box::new(second), at));
            }
            cur.expect(b')')?;
            Ok(first)
        }
        Some(c) if c.is_ascii_digit() => {
            let d = cur.digits().unwrap();
            Ok(Expr::Int(d.parse().unwrap()))
        }
        Some(c) if c.is_ascii_alphabetic() => {
            let at = cur.origin + cur.pos;
            let name = cur.ident().unwrap();
            Ok(Expr::Var(name.to_string(), at))
        }
        Some(c) => Err(cur.err(format!("unexpected '{}'", c as char))),
        None => Err(cur.err("unexpected end of input")),
    }
}

fn eval(ring: &Ring, e: &Expr) -> Result<Value, ParseError> {
    Ok(match e {
        Expr::Int(n) => ring.from_int(n),
        Expr::Var(name, at) => ring
            .variable(name)
            .map_err(|err| ParseError::new(*at, err.to_string()))?,
        Expr::Neg(a) => ring.neg(&eval(ring, a)?),
        Expr::Add(a, b) => ring.add(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Sub(a, b) => ring.sub(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Mul(a, b) => ring.mul(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Div(a, b, at) => {
            let (x, y) = (eval(ring, a)?, eval(ring, b)?);
            ring.div(&x, &y)
                .map_err(|err| ParseError::new(*at, err.to_string()))?
        }
        Expr::Pow(a, k) => ring.pow(&eval(ring, a)?, *k),
        Expr::Pair(a, b, at) => match ring.kind() {
            super::RingKind::Product(l, r) => {
                Value::Pair(Box::new(eval(l, a)?), Box::new(eval(r, b)?))
            }
            _ => return Err(ParseError::new(*at, format!("pair literal outside a product ring ({ring})"))),
        },
    })
}

fn parse_element_at(ring: &Ring, text: &str, origin: usize) -> Result<Value, ParseError> {
    let mut cur = Cursor::new(text, origin);
    let e = expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    eval(ring, &e)
}

pub(crate) fn parse_element(ring: &Ring, text: &str) -> Result<Value, ParseError> {
    parse_element_at(ring, text, 0)
}

/// Comma-separated elements, optionally wrapped in square brackets.
pub(crate) fn parse_tuple(ring: &Ring, text: &str) -> Result<Vec<Value>, ParseError> {
    let mut cur = Cursor::new(text, 0);
    let bracketed = cur.eat(b'[');
    let mut out = Vec::new();
    loop {
        let e = expr(&mut cur)?;
        out.push(eval(ring, &e)?);
        if !cur.eat(b',') {
            break;
        }
    }
    if bracketed {
        cur.expect(b']')?;
    }
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(out)
}
