//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int ('/' uint)? | var | '(' expr ')'
//! ```

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Poly, VariableSet};
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
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
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
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
            d if d.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((pos, Tok::Int(s.parse::<BigInt>().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Ident(bytes[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Syntax { pos, msg: alloc::format!("unexpected character `{}`", other) })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(Rational),
    Var(String, usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Neg(Box<Ast>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<Ast> {
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let mut lhs = self.term()?;
        if neg {
            lhs = Ast::Neg(Box::new(lhs));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            let rhs = self.factor()?;
            lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn uint(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected an unsigned integer"),
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            let e = self.uint()?;
            let e: u32 = u32::try_from(e)
                .ok()
                .filter(|e| *e <= 10_000)
                .ok_or(Error::Syntax { pos, msg: "exponent too large".into() })?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.uint()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Syntax { pos, msg: "zero denominator".into() });
                    }
                    let q = num_rational::BigRational::new(n, d);
                    return Ok(Ast::Num(Rational::from_big(q)));
                }
                Ok(Ast::Num(Rational::from(n)))
            }
            Some(Tok::Ident(name)) => {
                let pos = self.pos();
                self.at += 1;
                Ok(Ast::Var(name, pos))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_ast(text: &str) -> Result<Ast> {
    let toks = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, at: 0, end };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let ast = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(ast)
}

fn to_poly(ast: &Ast, vars: &VariableSet) -> Result<Poly> {
    let n = vars.len();
    Ok(match ast {
        Ast::Num(q) => Poly::constant(n, q.clone()),
        Ast::Var(name, pos) => match vars.index_of(name) {
            Some(i) => Poly::var(n, i),
            None => return Err(Error::UnknownVariable { name: name.clone(), pos: *pos }),
        },
        Ast::Add(a, b) => to_poly(a, vars)?.add(&to_poly(b, vars)?),
        Ast::Sub(a, b) => to_poly(a, vars)?.sub(&to_poly(b, vars)?),
        Ast::Mul(a, b) => to_poly(a, vars)?.mul(&to_poly(b, vars)?),
        Ast::Pow(a, e) => to_poly(a, vars)?.pow(*e),
        Ast::Neg(a) => to_poly(a, vars)?.neg(),
    })
}

/// Parses a polynomial over `vars`. Column positions in errors are 1-based.
pub fn parse_poly(text: &str, vars: &VariableSet) -> Result<Poly> {
    to_poly(&parse_ast(text)?, vars)
}

/// Integer-valued expression in named parameters, used for expected table values.
#[derive(Clone, Debug)]
pub struct IntExpr {
    text: String,
    ast: Ast,
}

impl IntExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let ast = parse_ast(text)?;
        fn check(a: &Ast) -> Result<()> {
            match a {
                Ast::Num(q) if !q.is_integer() => {
                    Err(Error::Syntax { pos: 1, msg: "fractions are not allowed in integer expressions".into() })
                }
                Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => {
                    check(a)?;
                    check(b)
                }
                Ast::Pow(a, _) | Ast::Neg(a) => check(a),
                _ => Ok(()),
            }
        }
        check(&ast)?;
        Ok(IntExpr { text: text.trim().to_string(), ast })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Names referenced by the expression.
    pub fn params(&self) -> Vec<String> {
        fn walk(a: &Ast, out: &mut Vec<String>) {
            match a {
                Ast::Var(n, _) => {
                    if !out.contains(n) {
                        out.push(n.clone())
                    }
                }
                Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Ast::Pow(a, _) | Ast::Neg(a) => walk(a, out),
                Ast::Num(_) => {}
            }
        }
        let mut out = Vec::new();
        walk(&self.ast, &mut out);
        out
    }

    pub fn eval(&self, env: &BTreeMap<String, i64>) -> Result<i64> {
        fn go(a: &Ast, env: &BTreeMap<String, i64>) -> Result<i64> {
            let ovf = || Error::Range("integer overflow in expression".into());
            Ok(match a {
                Ast::Num(q) => q.to_i64().ok_or_else(ovf)?,
                Ast::Var(n, pos) => *env.get(n).ok_or(Error::UnknownVariable { name: n.clone(), pos: *pos })?,
                Ast::Add(a, b) => go(a, env)?.checked_add(go(b, env)?).ok_or_else(ovf)?,
                Ast::Sub(a, b) => go(a, env)?.checked_sub(go(b, env)?).ok_or_else(ovf)?,
                Ast::Mul(a, b) => go(a, env)?.checked_mul(go(b, env)?).ok_or_else(ovf)?,
                Ast::Pow(a, e) => go(a, env)?.checked_pow(*e).ok_or_else(ovf)?,
                Ast::Neg(a) => go(a, env)?.checked_neg().ok_or_else(ovf)?,
            })
        }
        go(&self.ast, env)
    }
}

impl PartialEq for IntExpr {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}
