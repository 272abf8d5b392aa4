//! Text templates with integer expressions in `n`.
//!
//! `{expr}` is replaced by the value of an integer expression over the
//! bound names (`n`, loop indices), with `+ - * /`, parentheses and
//! `C(a, b)`. `sum[k=A..B](body)` expands to the bodies joined by ` + `
//! (or `0` when empty); `list[k=A..B](body)` joins them with `, `.
//! A value directly following `^` must be at least 1.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type Env = HashMap<String, i64>;

pub fn env_n(n: u32) -> Env {
    let mut e = Env::new();
    e.insert("n".into(), n as i64);
    e
}

fn err(msg: impl Into<String>) -> Error {
    Error::Catalog(msg.into())
}

pub fn render(template: &str, env: &Env) -> Result<String> {
    let mut out = String::new();
    let mut rest = template;
    while !rest.is_empty() {
        if let Some(kind) = ["sum[", "list["].iter().find(|k| rest.starts_with(**k)) {
            let after = &rest[kind.len()..];
            let close = after.find(']').ok_or_else(|| err(format!("unclosed range in `{template}`")))?;
            let header = &after[..close];
            let body_start = &after[close + 1..];
            if !body_start.starts_with('(') {
                return Err(err(format!("range without body in `{template}`")));
            }
            let end = matching(body_start, '(', ')')
                .ok_or_else(|| err(format!("unclosed body in `{template}`")))?;
            let body = &body_start[1..end];
            let (var, lo, hi) = range_header(header, env)?;
            let mut parts = Vec::new();
            let mut inner = env.clone();
            for k in lo..=hi {
                inner.insert(var.clone(), k);
                parts.push(render(body, &inner)?);
            }
            if *kind == "sum[" {
                if parts.is_empty() {
                    out.push('0');
                } else {
                    out.push_str(&parts.join(" + "));
                }
            } else {
                out.push_str(&parts.join(", "));
            }
            rest = &body_start[end + 1..];
        } else if rest.starts_with('{') {
            let end = matching(rest, '{', '}').ok_or_else(|| err(format!("unclosed brace in `{template}`")))?;
            let value = evaluate(&rest[1..end], env)?;
            if out.ends_with('^') && value < 1 {
                return Err(err(format!("exponent {value} < 1 in `{template}`")));
            }
            out.push_str(&value.to_string());
            rest = &rest[end + 1..];
        } else {
            let c = rest.chars().next().unwrap_or_default();
            out.push(c);
            rest = &rest[c.len_utf8()..];
        }
    }
    Ok(out)
}

/// Renders and splits on top-level commas, dropping empty items.
pub fn render_list(templates: &[String], env: &Env) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for t in templates {
        let text = render(t, env)?;
        out.extend(
            split_top_level(&text)
                .into_iter()
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty()),
        );
    }
    Ok(out)
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn matching(s: &str, open: char, close: char) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

fn range_header(header: &str, env: &Env) -> Result<(String, i64, i64)> {
    let (var, range) = header
        .split_once('=')
        .ok_or_else(|| err(format!("bad range header `{header}`")))?;
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| err(format!("bad range header `{header}`")))?;
    Ok((var.trim().to_string(), evaluate(lo, env)?, evaluate(hi, env)?))
}

/// Integer expression evaluation.
pub fn evaluate(expr: &str, env: &Env) -> Result<i64> {
    let tokens = tokenize(expr)?;
    let mut p = Parser { tokens, pos: 0, env, expr };
    let v = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(err(format!("trailing input in `{expr}`")));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Name(String),
    Op(char),
}

fn tokenize(expr: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = expr.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| err(format!("bad number in `{expr}`")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if "+-*/(),".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(format!("unexpected `{c}` in `{expr}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    env: &'a Env,
    expr: &'a str,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(format!("expected `{c}` in `{}`", self.expr)))
        }
    }

    fn sum(&mut self) -> Result<i64> {
        let mut v = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let r = self.product()?;
            v = if op == '+' { v + r } else { v - r };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<i64> {
        let mut v = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let r = self.unary()?;
            if op == '*' {
                v *= r;
            } else {
                if r == 0 || v % r != 0 {
                    return Err(err(format!("inexact division in `{}`", self.expr)));
                }
                v /= r;
            }
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<i64> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<i64> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Name(name)) if name == "C" && self.tokens.get(self.pos + 1) == Some(&Tok::Op('(')) => {
                self.pos += 2;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(')')?;
                Ok(binomial(a, b))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                self.env
                    .get(&name)
                    .copied()
                    .ok_or_else(|| err(format!("unbound `{name}` in `{}`", self.expr)))
            }
            _ => Err(err(format!("malformed expression `{}`", self.expr))),
        }
    }
}

fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
}
