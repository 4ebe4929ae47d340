//! The expression grammar shared by every input file:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := base ("^" nat)?
//! base   := ident | nat | "(" expr ")" | "-" factor
//! ```
//!
//! `g` names the generator of `F_q`; integer literals reduce mod `p`.

use super::{Field, FiniteField, FunctionField, Poly, PolyRing, RatFunc, Ring, Tower, TowerElem};
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Ident(String, Pos),
    Int(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u64),
}

fn perr(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Int(s), pos));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_alphanumeric() || **d == '_' || **d == '\'')
            {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Ident(s), pos));
        } else if "+-*/^()".contains(c) {
            chars.next();
            column += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(perr(pos, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.bump().1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.bump() {
            (Tok::Int(s), pos) => {
                let e: u64 = s
                    .parse()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| perr(pos, format!("exponent {s} exceeds {MAX_EXPONENT}")))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            (_, pos) => Err(perr(pos, "expected a natural number exponent")),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.bump() {
            (Tok::Ident(s), pos) => Ok(Expr::Ident(s, pos)),
            (Tok::Int(s), _) => Ok(Expr::Int(s)),
            (Tok::Sym('('), _) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(perr(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            (Tok::Sym('-'), _) => Ok(Expr::Neg(Box::new(self.factor()?))),
            (Tok::End, pos) => Err(perr(pos, "unexpected end of expression")),
            (t, pos) => Err(perr(pos, format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(perr(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// A ring expressions can be evaluated into.
pub trait ExprTarget {
    type Value: Clone;

    fn base_field(&self) -> &FiniteField;
    fn constant(&self, c: u32) -> Self::Value;
    fn ident(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn pow(&self, a: &Self::Value, e: u64) -> Self::Value;
    /// `a / b`, or a message explaining why the division is not allowed.
    fn div(&self, a: &Self::Value, b: &Self::Value) -> std::result::Result<Self::Value, String>;
}

pub fn eval<T: ExprTarget>(target: &T, e: &Expr) -> Result<T::Value> {
    Ok(match e {
        Expr::Ident(name, pos) => match target.ident(name) {
            Some(v) => v,
            None if name == "g" => target.constant(target.base_field().generator()),
            None => return Err(perr(*pos, format!("unknown identifier {name}"))),
        },
        Expr::Int(s) => target.constant(target.base_field().from_decimal(s)),
        Expr::Neg(a) => target.neg(&eval(target, a)?),
        Expr::Add(a, b) => target.add(&eval(target, a)?, &eval(target, b)?),
        Expr::Sub(a, b) => target.sub(&eval(target, a)?, &eval(target, b)?),
        Expr::Mul(a, b) => target.mul(&eval(target, a)?, &eval(target, b)?),
        Expr::Div(a, b, pos) => {
            let (a, b) = (eval(target, a)?, eval(target, b)?);
            target.div(&a, &b).map_err(|m| perr(*pos, m))?
        }
        Expr::Pow(a, n) => target.pow(&eval(target, a)?, *n),
    })
}

pub fn parse_with<T: ExprTarget>(target: &T, src: &str) -> Result<T::Value> {
    eval(target, &parse_expr(src)?)
}

/// Evaluation into a field with named elements.
pub struct FieldTarget<'a, F: Field> {
    pub field: &'a F,
    pub names: Vec<(String, F::Elem)>,
}

impl<F: Field> ExprTarget for FieldTarget<'_, F> {
    type Value = F::Elem;

    fn base_field(&self) -> &FiniteField {
        self.field.base()
    }
    fn constant(&self, c: u32) -> F::Elem {
        self.field.from_base(c)
    }
    fn ident(&self, name: &str) -> Option<F::Elem> {
        self.names.iter().find(|(n, _)| n == name).map(|(_, v)| v.clone())
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.field.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.field.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.field.mul(a, b)
    }
    fn neg(&self, a: &F::Elem) -> F::Elem {
        self.field.neg(a)
    }
    fn pow(&self, a: &F::Elem, e: u64) -> F::Elem {
        self.field.pow(a, e)
    }
    fn div(&self, a: &F::Elem, b: &F::Elem) -> std::result::Result<F::Elem, String> {
        self.field.div(a, b).map_err(|_| "division by zero".to_string())
    }
}

/// Evaluation into a polynomial ring over a field: ring variables first,
/// then named constants of the coefficient field. Only division by nonzero
/// constants is allowed.
pub struct PolyTarget<'a, F: Field> {
    pub ring: &'a PolyRing<F>,
    pub coeff_names: Vec<(String, F::Elem)>,
}

impl<F: Field> ExprTarget for PolyTarget<'_, F> {
    type Value = Poly<F::Elem>;

    fn base_field(&self) -> &FiniteField {
        self.ring.field().base()
    }
    fn constant(&self, c: u32) -> Self::Value {
        self.ring.from_base(c)
    }
    fn ident(&self, name: &str) -> Option<Self::Value> {
        if let Some(i) = self.ring.var_index(name) {
            return Some(self.ring.var(i));
        }
        self.coeff_names
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| self.ring.constant(v.clone()))
    }
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.ring.mul(a, b)
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        self.ring.neg(a)
    }
    fn pow(&self, a: &Self::Value, e: u64) -> Self::Value {
        self.ring.pow(a, e)
    }
    fn div(&self, a: &Self::Value, b: &Self::Value) -> std::result::Result<Self::Value, String> {
        let c = self
            .ring
            .constant_value(b)
            .ok_or_else(|| "division by a non-constant polynomial".to_string())?;
        let inv = self
            .ring
            .field()
            .inv(&c)
            .map_err(|_| "division by zero".to_string())?;
        Ok(self.ring.scale(&inv, a))
    }
}

fn function_field_names(k: &FunctionField) -> Vec<(String, RatFunc)> {
    k.vars()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), k.var(i)))
        .collect()
}

/// Parses an element of `K = k(y1..ym)`.
pub fn parse_ratfunc(k: &FunctionField, src: &str) -> Result<RatFunc> {
    parse_with(
        &FieldTarget {
            field: k,
            names: function_field_names(k),
        },
        src,
    )
}

/// Parses an element of a tower over `K`; both the `K` variables and the
/// adjoined roots may appear.
pub fn parse_tower_elem(l: &Tower, src: &str) -> Result<TowerElem> {
    let k = l.base_field();
    let mut names: Vec<(String, TowerElem)> = function_field_names(k)
        .into_iter()
        .map(|(n, v)| (n, l.embed(&v)))
        .collect();
    names.extend(
        l.names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), l.generator(i))),
    );
    parse_with(&FieldTarget { field: l, names }, src)
}

/// Parses a polynomial in `ring` whose coefficients live in `K`.
pub fn parse_poly_over_k(ring: &PolyRing<FunctionField>, src: &str) -> Result<Poly<RatFunc>> {
    parse_with(
        &PolyTarget {
            ring,
            coeff_names: function_field_names(ring.field()),
        },
        src,
    )
}

/// Parses a polynomial over `F_q`.
pub fn parse_poly(ring: &PolyRing<FiniteField>, src: &str) -> Result<Poly<u32>> {
    parse_with(
        &PolyTarget {
            ring,
            coeff_names: Vec::new(),
        },
        src,
    )
}
