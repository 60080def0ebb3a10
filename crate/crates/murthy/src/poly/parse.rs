//! Text grammar for polynomials.
//!
//! Coefficients are integers or integer fractions (`1/2`), `^` takes powers,
//! `*` is optional between factors, variables are identifiers, parentheses
//! group. Examples: `3*x^2*y - 1/2*y + 4`, `(x+1)*(x-1)`, `3x^2y`.

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;

impl Polynomial {
    /// Parses an expression in the given ring. The printer and parser
    /// round-trip: `parse(ring, f.to_string()) == f`.
    pub fn parse(ring: &Ring, input: &str) -> Result<Polynomial> {
        let tokens = tokenize(input)?;
        let mut p = Parser {
            ring,
            tokens,
            pos: 0,
        };
        let poly = p.expression()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Syntax(format!(
                "unexpected `{}` after expression",
                p.tokens[p.pos]
            )));
        }
        Ok(poly)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Token::Number(s) => write!(f, "{}", s),
            Token::Ident(s) => write!(f, "{}", s),
            Token::Plus => write!(f, "+"),
            Token::Minus => write!(f, "-"),
            Token::Star => write!(f, "*"),
            Token::Caret => write!(f, "^"),
            Token::Slash => write!(f, "/"),
            Token::LParen => write!(f, "("),
            Token::RParen => write!(f, ")"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' | '−' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Number(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(s));
            }
            other => {
                return Err(Error::Syntax(format!("unexpected character `{}`", other)));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                }
                Token::Minus => {
                    negate = !negate;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(t) = self.peek() {
            let mut negate = match t {
                Token::Plus => false,
                Token::Minus => true,
                _ => break,
            };
            self.pos += 1;
            while let Some(t) = self.peek() {
                match t {
                    Token::Plus => self.pos += 1,
                    Token::Minus => {
                        negate = !negate;
                        self.pos += 1;
                    }
                    _ => break,
                }
            }
            let t = self.term()?;
            acc = if negate {
                acc.add_impl(&t, true)
            } else {
                acc.add_impl(&t, false)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul_impl(&f);
                }
                // Implicit multiplication by adjacency: `3x`, `x y`, `2(x+1)`.
                Some(Token::Number(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul_impl(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Minus) => Ok(self.factor()?.neg()),
            Some(Token::Number(num)) => {
                // A fraction a/b binds tighter than multiplication.
                let den = if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Number(d)) => Some(d),
                        other => {
                            return Err(Error::Syntax(format!(
                                "expected denominator after `/`, got {:?}",
                                other
                            )))
                        }
                    }
                } else {
                    None
                };
                let c = scalar_from_decimal(self.ring.field(), &num, den.as_deref())?;
                let base = Polynomial::constant(self.ring, c);
                self.maybe_power(base)
            }
            Some(Token::Ident(name)) => {
                let base = Polynomial::variable(self.ring, &name)?;
                self.maybe_power(base)
            }
            Some(Token::LParen) => {
                let inner = self.expression()?;
                match self.next() {
                    Some(Token::RParen) => self.maybe_power(inner),
                    _ => Err(Error::Syntax("missing `)`".to_string())),
                }
            }
            other => Err(Error::Syntax(format!(
                "expected a factor, got {}",
                other.map_or("end of input".to_string(), |t| format!("`{}`", t))
            ))),
        }
    }

    fn maybe_power(&mut self, base: Polynomial) -> Result<Polynomial> {
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Number(e)) => {
                    let exp: u32 = e
                        .parse()
                        .map_err(|_| Error::Syntax(format!("exponent `{}` too large", e)))?;
                    Ok(base.pow(exp))
                }
                other => Err(Error::Syntax(format!(
                    "expected exponent after `^`, got {:?}",
                    other
                ))),
            }
        } else {
            Ok(base)
        }
    }
}

fn scalar_from_decimal(field: Field, num: &str, den: Option<&str>) -> Result<Scalar> {
    match field {
        Field::Rationals => {
            let n: BigInt = num.parse().expect("digits");
            let d: BigInt = den.map_or_else(|| BigInt::from(1), |d| d.parse().expect("digits"));
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(Scalar::Rat(BigRational::new(n, d)))
        }
        Field::Prime(p) => {
            let fold = |s: &str| s.bytes().fold(0u64, |acc, b| {
                (acc * 10 + (b - b'0') as u64) % p
            });
            let n = fold(num);
            match den {
                None => Ok(Scalar::Mod { value: n, p }),
                Some(d) => {
                    let dv = fold(d);
                    let inv = Scalar::Mod { value: dv, p }
                        .inverse()
                        .ok_or(Error::NotInvertible(dv, p))?;
                    Ok(Scalar::Mod { value: n, p }.mul(&inv))
                }
            }
        }
    }
}
