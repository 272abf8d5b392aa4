//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := '-' factor | atom ['^' exponent]
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```
//!
//! Identifiers that are not declared names are split into juxtaposed
//! declared names when possible, so `xy^2` reads as `x*y^2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(Error::Syntax {
                pos,
                message: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    false
                }
                Some(Tok::Minus) => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.bump();
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            let f = self.factor()?;
            return Ok(-&f);
        }
        // a juxtaposed run such as `xy^2` binds the exponent to its last name only
        let (prefix, base) = match self.peek() {
            Some(Tok::Ident(name)) => {
                let pos = self.pos();
                let name = name.clone();
                self.bump();
                self.identifier(&name, pos)?
            }
            _ => (Polynomial::one(self.ring), self.atom()?),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.exponent()?;
            return Ok(&prefix * &base.pow(e));
        }
        Ok(&prefix * &base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let braced = self.peek() == Some(&Tok::LBrace);
        if braced {
            self.bump();
        }
        let pos = self.pos();
        let e = match self.bump() {
            Some(Tok::Minus) => return Err(Error::NegativeExponent { pos }),
            Some(Tok::Int(n)) => u32::try_from(&n).map_err(|_| Error::Syntax {
                pos,
                message: "exponent too large".into(),
            })?,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    message: "expected exponent".into(),
                })
            }
        };
        if braced {
            self.expect(Tok::RBrace, "`}`")?;
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(p)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let qpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(q)) if !q.is_zero() => {
                            Ok(Polynomial::constant(self.ring, Rational::new(p, q)))
                        }
                        Some(Tok::Int(_)) => Err(Error::Syntax {
                            pos: qpos,
                            message: "zero denominator".into(),
                        }),
                        _ => Err(Error::Syntax {
                            pos: qpos,
                            message: "expected denominator".into(),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from_integer(p)))
                }
            }
            Some(Tok::Ident(name)) => {
                let (prefix, last) = self.identifier(&name, pos)?;
                Ok(&prefix * &last)
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(_) => Err(Error::Syntax {
                pos,
                message: "expected a number, a name or `(`".into(),
            }),
            None => Err(Error::Syntax {
                pos,
                message: "unexpected end of input".into(),
            }),
        }
    }

    fn lookup(&self, name: &str) -> Option<Polynomial> {
        if let Some(i) = self.ring.var_index(name) {
            return Some(Polynomial::var(self.ring, i));
        }
        self.ring
            .param_index(name)
            .map(|j| Polynomial::param(self.ring, j))
    }

    /// Resolves a name as `(product of leading names, last name)`.
    fn identifier(&self, name: &str, pos: usize) -> Result<(Polynomial, Polynomial)> {
        if let Some(p) = self.lookup(name) {
            return Ok((Polynomial::one(self.ring), p));
        }
        match self.split(name) {
            Some(mut parts) => {
                let last = parts.pop().expect("non-empty split");
                let mut acc = Polynomial::one(self.ring);
                for part in parts {
                    acc = &acc * &self.lookup(part).expect("split yields known names");
                }
                Ok((acc, self.lookup(last).expect("split yields known names")))
            }
            None => Err(Error::UnknownIdentifier {
                pos,
                name: name.to_string(),
            }),
        }
    }

    /// Splits `name` into declared names, preferring the longest prefix.
    fn split<'n>(&self, name: &'n str) -> Option<Vec<&'n str>> {
        if name.is_empty() {
            return Some(Vec::new());
        }
        for cut in (1..=name.len()).rev() {
            if !name.is_char_boundary(cut) {
                continue;
            }
            let head = &name[..cut];
            if self.lookup(head).is_some() {
                if let Some(mut rest) = self.split(&name[cut..]) {
                    rest.insert(0, head);
                    return Some(rest);
                }
            }
        }
        None
    }
}

/// Parses `text` in `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            message: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        ring,
    };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return Err(Error::Syntax {
            pos: p.pos(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(out)
}

/// Parses a comma-separated generator list; commas inside parentheses are respected.
pub fn parse_ideal(text: &str, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if !at_end {
            match bytes[i] {
                b'(' | b'{' => depth += 1,
                b')' | b'}' => depth -= 1,
                _ => {}
            }
        }
        if at_end || (bytes[i] == b',' && depth == 0) {
            let piece = &text[start..i];
            let p = parse_polynomial(piece, ring).map_err(|e| shift(e, start))?;
            out.push(p);
            start = i + 1;
        }
    }
    Ok(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, message } => Error::Syntax {
            pos: pos + by,
            message,
        },
        Error::UnknownIdentifier { pos, name } => Error::UnknownIdentifier {
            pos: pos + by,
            name,
        },
        Error::NegativeExponent { pos } => Error::NegativeExponent { pos: pos + by },
        other => other,
    }
}
