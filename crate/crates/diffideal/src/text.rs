//! Polynomial and rational-function text syntax.
//!
//! Terms are joined by `+`/`-`, coefficients are integers or `p/q`, powers use
//! `^`, and multiplication is always explicit: `3/2*X^2*Y - 1`. A rational
//! function is `P / Q` where the `/` sits between two polynomials; a `/`
//! between two integer literals is a coefficient instead. Parsing and
//! printing round-trip canonically.

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat};
use crate::ratfunc::RationalFunction;
use crate::ring::{Monomial, MonomialOrder, Ring};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Symbol(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

struct Lexer {
    tokens: Vec<(Token, usize)>, // (token, 1-based column)
}

fn lex(input: &str) -> Result<Lexer> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '+' => tokens.push((Token::Plus, col)),
            '-' => tokens.push((Token::Minus, col)),
            '*' => tokens.push((Token::Star, col)),
            '^' => tokens.push((Token::Caret, col)),
            '/' => tokens.push((Token::Slash, col)),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                let n = text
                    .parse::<BigInt>()
                    .map_err(|e| Error::parse_at(1, col, format!("bad integer: {e}")))?;
                tokens.push((Token::Number(n), col));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                tokens.push((Token::Symbol(text), col));
            }
            other => {
                return Err(Error::parse_at(
                    1,
                    col,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
        i += 1;
    }
    Ok(Lexer { tokens })
}

struct Parser<'r> {
    ring: &'r Arc<Ring>,
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.pos + 1).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_column)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse_at(1, self.col(), message)
    }

    /// poly := [sign] term (sign term)*
    /// Stops (without consuming) at a top-level `/`, which separates the
    /// numerator and denominator of a rational function.
    fn parse_poly(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.ring);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    false
                }
                Some(Token::Minus) => {
                    self.bump();
                    true
                }
                None if first => return Err(self.err("empty polynomial")),
                None => return Err(self.err("trailing sign or incomplete expression")),
                _ if first => false,
                Some(Token::Slash) => return Ok(acc),
                Some(t) => {
                    return Err(self.err(format!(
                        "expected `+`, `-`, or end of input, found {}",
                        describe(t)
                    )))
                }
            };
            let term = self.parse_term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
            first = false;
            match self.peek() {
                None | Some(Token::Plus) | Some(Token::Minus) | Some(Token::Slash) => {
                    if self.peek().is_none() || matches!(self.peek(), Some(Token::Slash)) {
                        return Ok(acc);
                    }
                }
                Some(t) => {
                    let t = t.clone();
                    return Err(self.err(format!(
                        "expected `*`, `+`, or `-`, found {} (implicit multiplication is not allowed)",
                        describe(&t)
                    )));
                }
            }
        }
    }

    /// term := factor ('*' factor)*
    fn parse_term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let f = self.parse_factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    /// factor := NUMBER ('/' NUMBER)? | SYMBOL ('^' NUMBER)?
    fn parse_factor(&mut self) -> Result<MultiPoly> {
        match self.bump() {
            Some(Token::Number(n)) => {
                // `p/q` with integer q is a rational coefficient; any other
                // `/` belongs to the enclosing rational function.
                if matches!(self.peek(), Some(Token::Slash))
                    && matches!(self.peek2(), Some(Token::Number(_)))
                {
                    self.bump();
                    let d = match self.bump() {
                        Some(Token::Number(d)) => d,
                        _ => unreachable!(),
                    };
                    if d.is_zero() {
                        return Err(self.err("zero denominator in coefficient"));
                    }
                    Ok(MultiPoly::constant(self.ring, Rat::new(n, d)))
                } else {
                    Ok(MultiPoly::constant(self.ring, Rat::from(n)))
                }
            }
            Some(Token::Symbol(name)) => {
                let index = self
                    .ring
                    .symbol_index(&name)
                    .ok_or_else(|| self.err(format!("unknown symbol `{name}`")))?;
                let exp = if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Number(n)) => {
                            if n.is_negative() {
                                return Err(self.err("negative exponent"));
                            }
                            u32::try_from(n).map_err(|_| self.err("exponent too large"))?
                        }
                        _ => return Err(self.err("expected integer exponent after `^`")),
                    }
                } else {
                    1
                };
                let m = Monomial::var(self.ring.num_symbols(), index).pow(exp);
                Ok(MultiPoly::from_terms(self.ring, [(m, Rat::one())]))
            }
            Some(t) => Err(self.err(format!("expected a coefficient or symbol, found {}", describe(&t)))),
            None => Err(self.err("expected a coefficient or symbol, found end of input")),
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Number(n) => format!("number `{n}`"),
        Token::Symbol(s) => format!("symbol `{s}`"),
        Token::Plus => "`+`".into(),
        Token::Minus => "`-`".into(),
        Token::Star => "`*`".into(),
        Token::Caret => "`^`".into(),
        Token::Slash => "`/`".into(),
    }
}

fn parser_for<'r>(ring: &'r Arc<Ring>, input: &str) -> Result<Parser<'r>> {
    let lexer = lex(input)?;
    Ok(Parser {
        ring,
        tokens: lexer.tokens,
        pos: 0,
        end_column: input.chars().count() + 1,
    })
}

/// Parses a polynomial in the given ring.
pub fn parse_poly(ring: &Arc<Ring>, input: &str) -> Result<MultiPoly> {
    let mut parser = parser_for(ring, input)?;
    let poly = parser.parse_poly()?;
    if let Some(t) = parser.peek() {
        let msg = format!("unexpected {} after polynomial", describe(t));
        return Err(parser.err(msg));
    }
    Ok(poly)
}

/// Parses `P` or `P / Q` as a rational function in canonical form.
pub fn parse_ratfunc(ring: &Arc<Ring>, input: &str) -> Result<RationalFunction> {
    let mut parser = parser_for(ring, input)?;
    let num = parser.parse_poly()?;
    match parser.peek() {
        None => RationalFunction::new(num, MultiPoly::one(ring)),
        Some(Token::Slash) => {
            parser.bump();
            let den = parser.parse_poly()?;
            if let Some(t) = parser.peek() {
                let msg = format!(
                    "unexpected {} after denominator (only one top-level `/` is allowed)",
                    describe(t)
                );
                return Err(parser.err(msg));
            }
            RationalFunction::new(num, den)
        }
        Some(_) => unreachable!("parse_poly stops only at `/` or end"),
    }
}

fn render_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.symbol_name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.symbol_name(i), e)),
        }
    }
    parts.join("*")
}

/// Renders `p` with terms in decreasing `order`. Inverse of [`parse_poly`].
pub fn render_poly(p: &MultiPoly, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let mut terms: Vec<(&Monomial, &Rat)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| order.compare(b, a));
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -(*c).clone() } else { (*c).clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(ring, m);
        if mono.is_empty() {
            out.push_str(&render_rat(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&render_rat(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Renders a rational function as `num` or `num / den`.
pub fn render_ratfunc(r: &RationalFunction, order: &MonomialOrder) -> String {
    if r.den().is_constant() {
        // Canonical form has monic denominator, so a constant denominator is 1.
        render_poly(r.num(), order)
    } else {
        format!("{} / {}", render_poly(r.num(), order), render_poly(r.den(), order))
    }
}
