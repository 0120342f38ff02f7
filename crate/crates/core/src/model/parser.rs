//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := rational | ident | 'dot' '(' ident ')' | '(' expr ')'
//! ```
//!
//! A divisor must be free of ring variables and nonzero, i.e. a unit of the
//! coefficient field.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

/// Cap on the total degree of any intermediate result.
const MAX_DEGREE: u32 = 1000;

fn max_degree(p: &Polynomial) -> u32 {
    p.total_degree()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, k) = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l, column: k });
            i += 1;
            col += 1;
        } else if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Num(s.parse().expect("digits")),
                line: l,
                column: k,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l,
                column: k,
            });
        } else {
            return Err(Error::Parse {
                line: l,
                column: k,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, t: &Spanned, message: impl Into<String>) -> Error {
        Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.err_at(&self.toks[self.pos], message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    let at = self.toks[self.pos].clone();
                    let f = self.factor()?;
                    if max_degree(&acc) + max_degree(&f) > MAX_DEGREE {
                        return Err(self.err_at(&at, "degree too large"));
                    }
                    acc = acc.mul(&f);
                }
                Tok::Slash => {
                    self.next();
                    let at = self.toks[self.pos].clone();
                    let d = self.factor()?;
                    let c = d
                        .as_constant()
                        .ok_or_else(|| self.err_at(&at, "divisor must not contain variables"))?;
                    let inv = c.inv().ok_or_else(|| self.err_at(&at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(self.factor()?.neg());
        }
        let b = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(b);
        }
        self.next();
        match self.peek().clone() {
            Tok::Num(n) => {
                let e: u32 = n
                    .try_into()
                    .ok()
                    .filter(|&e: &u32| e <= MAX_DEGREE && max_degree(&b) as u64 * e as u64 <= MAX_DEGREE as u64)
                    .ok_or_else(|| self.err("exponent too large"))?;
                self.next();
                Ok(b.pow(e))
            }
            Tok::Minus => Err(self.err("negative exponents are not allowed")),
            _ => Err(self.err("expected a nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Num(n) => {
                let mut q = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    if let Tok::Num(d) = &self.toks[self.pos + 1].tok {
                        let d = d.clone();
                        let at = self.toks[self.pos + 1].clone();
                        self.next();
                        self.next();
                        q = q
                            .checked_div(&Rational::from_integer(d))
                            .map_err(|_| self.err_at(&at, "division by zero"))?;
                    }
                }
                Ok(Polynomial::constant(self.ring, crate::poly::Coeff::from_rational(q)))
            }
            Tok::Ident(name) if name == "dot" && *self.peek() == Tok::LParen => {
                self.next();
                let it = self.next();
                let Tok::Ident(q) = it.tok.clone() else {
                    return Err(self.err_at(&it, "expected a coordinate inside dot(...)"));
                };
                self.expect(Tok::RParen, "`)`")?;
                let v = format!("dot({q})");
                match self.ring.table().index_of(&v) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(self.err_at(&it, format!("unknown coordinate `{q}`"))),
                }
            }
            Tok::Ident(name) => {
                if let Some(i) = self.ring.table().index_of(&name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if let Some(i) = self.ring.param_index(&name) {
                    Ok(Polynomial::param(self.ring, i))
                } else {
                    Err(self.err_at(&t, format!("unknown identifier `{name}`")))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::End => Err(self.err_at(&t, "unexpected end of input")),
            Tok::RParen => Err(self.err_at(&t, "unbalanced `)`")),
            _ => Err(self.err_at(&t, "expected a number, identifier or `(`")),
        }
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_expression(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    parse_expression_at(text, ring, 1, 1)
}

/// As [`parse_expression`], reporting locations relative to a starting
/// line and column (for expressions embedded in a larger file).
pub fn parse_expression_at(text: &str, ring: &Arc<Ring>, line: usize, column: usize) -> Result<Polynomial> {
    let toks = lex(text, line, column)?;
    let mut p = Parser { toks, pos: 0, ring };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => Err(p.err("unbalanced `)`")),
        _ => Err(p.err("unexpected token (implicit multiplication is not allowed)")),
    }
}
