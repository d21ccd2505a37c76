//! Surface syntax for elements of U_q.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary | unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] int)?
//! atom   := int | 'q' | param | gen | '(' expr ')'
//! gen    := ('E'|'F') '[' root ']' | 'K' '[' weight ']'
//! ```
//!
//! Roots are `a`, `b`, `ab` (= `a+b`) and `ba` (the second ordering of the
//! non-simple root vector, A2 only). Division is only allowed by nonzero
//! scalars and negative powers only of invertible elements `c·K_ν`. In A1
//! the bare letters `E`, `F`, `K` stand for the three generators.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::pbw::{Algebra, PBWMonomial, UElement};
use crate::rootdata::{RootSystem, SystemKind, Weight};
use crate::scalar::QRat;

/// Parameter values for symbolic names appearing in expressions.
pub type Substitution = HashMap<String, QRat>;

/// Which root vector a generator token names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootName {
    /// Position in the global convex order.
    Index(usize),
    /// `E_{βα}` / `F_{βα}`.
    BetaAlpha,
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    Param(String),
    E(RootName),
    F(RootName),
    K(Weight),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, i64),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    rs: &'a RootSystem,
}

fn perr(pos: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column: pos + 1,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(perr(self.pos, format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let c = self.peek();
            let neg = match c {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            terms.push(if neg { Expr::Neg(Box::new(t)) } else { t });
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            Some(c) => c.is_ascii_alphanumeric() || c == '(' || c == '_',
            None => false,
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let r = self.unary()?;
                    acc = push_product(acc, r);
                }
                Some('/') => {
                    self.pos += 1;
                    let r = self.unary()?;
                    acc = Expr::Quotient(Box::new(acc), Box::new(r));
                }
                _ if self.starts_atom() => {
                    let r = self.power()?;
                    acc = push_product(acc, r);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let mut neg = false;
            match self.peek() {
                Some('-') => {
                    neg = true;
                    self.pos += 1;
                }
                Some('(') => {
                    // allow K[a]^(-1)
                    self.pos += 1;
                    if self.peek() == Some('-') {
                        neg = true;
                        self.pos += 1;
                    }
                    let n = self.integer()?;
                    self.expect(')')?;
                    return Ok(Expr::Power(Box::new(base), if neg { -n } else { n }));
                }
                _ => {}
            }
            let n = self.integer()?;
            return Ok(Expr::Power(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(perr(self.pos, "expected integer exponent"));
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| perr(start, "exponent out of range"))
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return Err(perr(self.pos, "unexpected end of input"));
        };
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            return Ok(Expr::Int(s.parse().map_err(|_| perr(start, "bad integer"))?));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = self.pos;
            while self.pos < self.chars.len()
                && (self.chars[self.pos].is_ascii_alphanumeric()
                    || self.chars[self.pos] == '_'
                    || self.chars[self.pos] == '\'')
            {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            return match name.as_str() {
                "q" => Ok(Expr::Q),
                "E" | "F" | "K" => self.generator(&name, start),
                _ => Ok(Expr::Param(name)),
            };
        }
        Err(perr(self.pos, format!("unexpected '{c}'")))
    }

    fn generator(&mut self, name: &str, start: usize) -> Result<Expr> {
        if self.chars.get(self.pos) != Some(&'[') {
            if self.rs.kind == SystemKind::A1 {
                return Ok(match name {
                    "E" => Expr::E(RootName::Index(0)),
                    "F" => Expr::F(RootName::Index(0)),
                    _ => Expr::K(Weight::ALPHA),
                });
            }
            return Err(Error::UnknownGenerator(format!(
                "{name} (use {name}[...] in {})",
                self.rs.kind
            )));
        }
        self.pos += 1;
        let inner_start = self.pos;
        loop {
            match self.chars.get(self.pos) {
                None => return Err(perr(self.pos, "expected ']'")),
                Some(']') => break,
                Some(c) if c.is_ascii_alphanumeric() || *c == '+' || *c == '-' || c.is_whitespace() => self.pos += 1,
                Some(c) => return Err(perr(self.pos, format!("unexpected '{c}' in generator"))),
            }
        }
        let inner: String = self.chars[inner_start..self.pos].iter().collect();
        self.pos += 1;
        let inner = inner.trim().to_string();
        if name == "K" {
            let w = Weight::parse(&inner).map_err(|e| match e {
                Error::Parse { column, message } => Error::Parse {
                    column: column + inner_start,
                    message,
                },
                other => other,
            })?;
            if !self.rs.contains_weight(w) {
                return Err(Error::UnknownGenerator(format!("K[{inner}] in {}", self.rs.kind)));
            }
            return Ok(Expr::K(w));
        }
        let root = match inner.as_str() {
            "ba" if self.rs.kind == SystemKind::A2 => RootName::BetaAlpha,
            _ => {
                let w = Weight::parse(&inner).map_err(|_| Error::UnknownGenerator(format!("{name}[{inner}]")))?;
                let idx = self
                    .rs
                    .root_index(w)
                    .ok_or_else(|| Error::UnknownGenerator(format!("{name}[{inner}] in {}", self.rs.kind)))?;
                RootName::Index(idx)
            }
        };
        let _ = start;
        Ok(if name == "E" { Expr::E(root) } else { Expr::F(root) })
    }
}

fn push_product(acc: Expr, r: Expr) -> Expr {
    match acc {
        Expr::Product(mut v) => {
            v.push(r);
            Expr::Product(v)
        }
        other => Expr::Product(vec![other, r]),
    }
}

/// Parses text into an expression tree for the given root system.
pub fn parse_expr(system: SystemKind, text: &str) -> Result<Expr> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        rs: RootSystem::get(system),
    };
    if p.peek().is_none() {
        return Err(perr(0, "empty expression"));
    }
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(perr(p.pos, format!("unexpected '{c}'")));
    }
    Ok(e)
}

/// Evaluates an expression tree to a normalized element.
pub fn eval(system: SystemKind, e: &Expr, subs: &Substitution) -> Result<UElement> {
    let alg = Algebra::get(system);
    Ok(match e {
        Expr::Int(n) => UElement::scalar(system, QRat::from_bigint(n.clone())),
        Expr::Q => UElement::scalar(system, QRat::q()),
        Expr::Param(name) => UElement::scalar(
            system,
            subs.get(name)
                .cloned()
                .ok_or_else(|| Error::UnknownParameter(name.clone()))?,
        ),
        Expr::E(RootName::Index(i)) => UElement::e(system, *i),
        Expr::F(RootName::Index(i)) => UElement::f(system, *i),
        Expr::E(RootName::BetaAlpha) => alg.e_ba()?,
        Expr::F(RootName::BetaAlpha) => alg.f_ba()?,
        Expr::K(w) => UElement::k(system, *w),
        Expr::Neg(x) => -eval(system, x, subs)?,
        Expr::Sum(v) => {
            let mut acc = UElement::zero(system);
            for x in v {
                acc = acc.try_add(&eval(system, x, subs)?)?;
            }
            acc
        }
        Expr::Product(v) => {
            let mut acc = UElement::one(system);
            for x in v {
                acc = alg.multiply(&acc, &eval(system, x, subs)?)?;
            }
            acc
        }
        Expr::Quotient(a, b) => {
            let num = eval(system, a, subs)?;
            let den = eval(system, b, subs)?;
            let s = den
                .as_scalar()
                .ok_or_else(|| Error::Unsupported(format!("division by non-scalar {den}")))?;
            num.scale(&s.inv()?)
        }
        Expr::Power(x, n) => eval(system, x, subs)?.pow(*n)?,
    })
}

/// Parses and evaluates in one step.
pub fn parse_element(system: SystemKind, text: &str, subs: &Substitution) -> Result<UElement> {
    eval(system, &parse_expr(system, text)?, subs)
}

/// Name used for the root at convex index `i`.
pub fn root_name(system: SystemKind, i: usize) -> &'static str {
    match (system, i) {
        (SystemKind::A1, _) => "a",
        (SystemKind::A2, 0) => "a",
        (SystemKind::A2, 1) => "ab",
        _ => "b",
    }
}

/// `E[b]^2*E[ab]*K[-a]*F[a]`; the empty monomial prints as `1`.
pub fn print_monomial(system: SystemKind, m: &PBWMonomial) -> String {
    let rs = RootSystem::get(system);
    let n = rs.n_pos();
    let mut parts = Vec::new();
    let pw = |s: String, k: u16| if k == 1 { s } else { format!("{s}^{k}") };
    for i in (0..n).rev() {
        if m.e.0[i] > 0 {
            parts.push(pw(format!("E[{}]", root_name(system, i)), m.e.0[i]));
        }
    }
    if !m.k.is_zero() {
        parts.push(format!("K[{}]", m.k));
    }
    for i in 0..n {
        if m.f.0[i] > 0 {
            parts.push(pw(format!("F[{}]", root_name(system, i)), m.f.0[i]));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Canonical text of an element; reparses to the same element.
pub fn print_element(x: &UElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in x.terms().iter().enumerate() {
        let negative = c.numer().lc().is_some_and(|l| l < &BigInt::from(0));
        let abs = if negative { -c.clone() } else { c.clone() };
        let mono = print_monomial(x.system(), m);
        let body = if m.is_one() {
            abs.to_factor_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{}*{}", abs.to_factor_string(), mono)
        };
        match (i, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}
