//! Expression language for operators.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := postfix ('^' INT)*
//! postfix := primary ('[' INT ']')*
//! primary := INT | 'i' | param | stem '[' INT ']' | VECTOR
//!          | func '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Parameters are `m M m1 m2 M1 M2 t`; generator stems are `r k r2 k2 q p
//! lq lp q2 p2 lq2 lp2`; vector symbols are the upper-case stems; functions
//! are `comm`, `dot`, `cross` and `adj`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::galilei::{cross, dot, vector, Vector3};
use crate::opalgebra::{Generator, Kind, OperatorExpr, Sector};
use crate::scalar::{Param, ParamScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Comm,
    Dot,
    Cross,
    Adj,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Comm => "comm",
            Func::Dot => "dot",
            Func::Cross => "cross",
            Func::Adj => "adj",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Adj => 1,
            _ => 2,
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        [Func::Comm, Func::Dot, Func::Cross, Func::Adj].into_iter().find(|f| f.name() == s)
    }
}

/// Vector operator symbol such as `R` or `LP2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorSymbol {
    pub sector: Sector,
    pub kind: Kind,
}

impl VectorSymbol {
    fn from_name(s: &str) -> Option<Self> {
        if s.chars().any(|c| c.is_ascii_lowercase()) {
            return None;
        }
        let g = Generator::from_stem(&s.to_ascii_lowercase(), 1).ok()?;
        Some(VectorSymbol { sector: g.sector, kind: g.kind })
    }
}

impl fmt::Display for VectorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = Generator { sector: self.sector, kind: self.kind, axis: 1 };
        f.write_str(&g.stem().to_ascii_uppercase())
    }
}

/// Parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Int(BigInt),
    Imag,
    Param(Param),
    Gen(Generator),
    Vector(VectorSymbol),
    Index(Box<Ast>, u8),
    Neg(Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Call(Func, Vec<Ast>),
}

impl Ast {
    fn precedence(&self) -> u8 {
        match self {
            Ast::Bin(op, ..) => op.precedence(),
            Ast::Neg(_) => 3,
            Ast::Pow(..) => 4,
            _ => 5,
        }
    }

    fn has_operator_atom(&self) -> bool {
        match self {
            Ast::Gen(_) | Ast::Vector(_) => true,
            Ast::Int(_) | Ast::Imag | Ast::Param(_) => false,
            Ast::Index(a, _) | Ast::Neg(a) | Ast::Pow(a, _) => a.has_operator_atom(),
            Ast::Bin(_, a, b) => a.has_operator_atom() || b.has_operator_atom(),
            Ast::Call(_, args) => args.iter().any(Ast::has_operator_atom),
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Ast::Int(n) => write!(f, "{n}"),
            Ast::Imag => f.write_str("i"),
            Ast::Param(p) => f.write_str(p.symbol()),
            Ast::Gen(g) => write!(f, "{g}"),
            Ast::Vector(v) => write!(f, "{v}"),
            Ast::Index(a, i) => {
                a.fmt_at(f, 5)?;
                write!(f, "[{i}]")
            }
            Ast::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 3)
            }
            Ast::Bin(op, a, b) => {
                let p = op.precedence();
                a.fmt_at(f, p)?;
                f.write_str(op.symbol())?;
                b.fmt_at(f, p + 1)
            }
            Ast::Pow(a, n) => {
                a.fmt_at(f, 5)?;
                write!(f, "^{n}")
            }
            Ast::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.fmt_at(f, 0)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if b"+-*/^()[],".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(perr(i, format!("unexpected character `{ch}`")));
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(self.offset(), format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u64> {
        let off = self.offset();
        match self.bump() {
            Tok::Int(n) => u64::try_from(n).map_err(|_| perr(off, format!("{what} is too large"))),
            t => Err(perr(off, format!("expected {what}, found {}", describe(&t)))),
        }
    }

    fn index(&mut self) -> Result<u8> {
        let off = self.offset();
        let n = self.small_int("an index")?;
        if !(1..=3).contains(&n) {
            return Err(perr(off, format!("index {n} out of range 1..3")));
        }
        Ok(n as u8)
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let off = self.offset();
            let rhs = self.unary()?;
            if op == BinOp::Div && rhs.has_operator_atom() {
                return Err(perr(off, "denominator must not contain operators"));
            }
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            Ok(Ast::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let mut base = self.postfix()?;
        while self.eat('^') {
            let off = self.offset();
            let n = self.small_int("a nonnegative integer exponent")?;
            let n = u32::try_from(n).map_err(|_| perr(off, "exponent is too large"))?;
            base = Ast::Pow(Box::new(base), n);
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<Ast> {
        let mut e = self.primary()?;
        while self.eat('[') {
            let i = self.index()?;
            self.expect(']')?;
            e = Ast::Index(Box::new(e), i);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Ast> {
        let off = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(Ast::Int(n)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.identifier(off, &name),
            t => Err(perr(off, format!("expected an operand, found {}", describe(&t)))),
        }
    }

    fn identifier(&mut self, off: usize, name: &str) -> Result<Ast> {
        if name == "i" {
            return Ok(Ast::Imag);
        }
        if let Some(p) = Param::from_symbol(name) {
            return Ok(Ast::Param(p));
        }
        if let Some(v) = VectorSymbol::from_name(name) {
            return Ok(Ast::Vector(v));
        }
        if let Some(func) = Func::from_name(name) {
            self.expect('(')?;
            let mut args = vec![self.expr()?];
            while self.eat(',') {
                args.push(self.expr()?);
            }
            self.expect(')')?;
            if args.len() != func.arity() {
                return Err(perr(off, format!("{name} takes {} argument(s), got {}", func.arity(), args.len())));
            }
            return Ok(Ast::Call(func, args));
        }
        if Generator::from_stem(name, 1).is_ok() {
            self.expect('[')?;
            let i = self.index()?;
            self.expect(']')?;
            return Ok(Ast::Gen(Generator::from_stem(name, i)?));
        }
        Err(perr(off, format!("unknown symbol `{name}`")))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".to_string(),
    }
}

pub fn parse(text: &str) -> Result<Ast> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(perr(p.offset(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(e)
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(OperatorExpr),
    Vector(Vector3),
}

impl Value {
    pub fn into_scalar(self) -> Result<OperatorExpr> {
        match self {
            Value::Scalar(e) => Ok(e),
            Value::Vector(_) => Err(Error::Eval("expected an operator, got a vector".into())),
        }
    }

    fn vector(self, ctx: &str) -> Result<Vector3> {
        match self {
            Value::Vector(v) => Ok(v),
            Value::Scalar(_) => Err(Error::Eval(format!("{ctx} expects vectors"))),
        }
    }
}

fn map_vec(v: &Vector3, f: impl Fn(&OperatorExpr) -> OperatorExpr) -> Vector3 {
    std::array::from_fn(|i| f(&v[i]))
}

pub fn eval_value(ast: &Ast) -> Result<Value> {
    use Value::*;
    Ok(match ast {
        Ast::Int(n) => Scalar(OperatorExpr::scalar(ParamScalar::rational(BigRational::from_integer(n.clone())))),
        Ast::Imag => Scalar(OperatorExpr::scalar(ParamScalar::i())),
        Ast::Param(p) => Scalar(OperatorExpr::param(*p)),
        Ast::Gen(g) => Scalar(OperatorExpr::generator(*g)),
        Ast::Vector(v) => Vector(vector(v.sector, v.kind)?),
        Ast::Index(a, i) => Scalar(eval_value(a)?.vector("indexing")?[*i as usize - 1].clone()),
        Ast::Neg(a) => match eval_value(a)? {
            Scalar(e) => Scalar(-&e),
            Vector(v) => Vector(map_vec(&v, |e| -e)),
        },
        Ast::Pow(a, n) => Scalar(eval_value(a)?.into_scalar()?.pow(*n)),
        Ast::Bin(op, a, b) => {
            let (a, b) = (eval_value(a)?, eval_value(b)?);
            match (op, a, b) {
                (BinOp::Add, Scalar(x), Scalar(y)) => Scalar(&x + &y),
                (BinOp::Sub, Scalar(x), Scalar(y)) => Scalar(&x - &y),
                (BinOp::Add, Vector(x), Vector(y)) => Vector(std::array::from_fn(|i| &x[i] + &y[i])),
                (BinOp::Sub, Vector(x), Vector(y)) => Vector(std::array::from_fn(|i| &x[i] - &y[i])),
                (BinOp::Add | BinOp::Sub, ..) => return Err(Error::Eval("cannot add a vector and an operator".into())),
                (BinOp::Mul, Scalar(x), Scalar(y)) => Scalar(&x * &y),
                (BinOp::Mul, Scalar(x), Vector(v)) => Vector(map_vec(&v, |e| &x * e)),
                (BinOp::Mul, Vector(v), Scalar(y)) => Vector(map_vec(&v, |e| e * &y)),
                (BinOp::Mul, Vector(_), Vector(_)) => {
                    return Err(Error::Eval("product of two vectors: use dot or cross".into()))
                }
                (BinOp::Div, num, Scalar(den)) => {
                    let c = den.as_scalar().ok_or_else(|| Error::Eval(format!("denominator {den} is not a number")))?;
                    let inv = c.inv()?;
                    match num {
                        Scalar(x) => Scalar(x.scale(&inv)),
                        Vector(v) => Vector(map_vec(&v, |e| e.scale(&inv))),
                    }
                }
                (BinOp::Div, _, Vector(_)) => return Err(Error::Eval("cannot divide by a vector".into())),
            }
        }
        Ast::Call(func, args) => {
            let vals = args.iter().map(eval_value).collect::<Result<Vec<_>>>()?;
            let mut it = vals.into_iter();
            match func {
                Func::Comm => {
                    let a = it.next().expect("arity").into_scalar()?;
                    let b = it.next().expect("arity").into_scalar()?;
                    Scalar(a.commutator(&b))
                }
                Func::Dot => {
                    let a = it.next().expect("arity").vector("dot")?;
                    let b = it.next().expect("arity").vector("dot")?;
                    Scalar(dot(&a, &b))
                }
                Func::Cross => {
                    let a = it.next().expect("arity").vector("cross")?;
                    let b = it.next().expect("arity").vector("cross")?;
                    Vector(cross(&a, &b))
                }
                Func::Adj => match it.next().expect("arity") {
                    Scalar(e) => Scalar(e.adjoint()),
                    Vector(v) => Vector(map_vec(&v, OperatorExpr::adjoint)),
                },
            }
        }
    })
}

/// Evaluate to a single operator.
pub fn eval(ast: &Ast) -> Result<OperatorExpr> {
    eval_value(ast)?.into_scalar()
}

/// Parse and evaluate.
pub fn parse_operator(text: &str) -> Result<OperatorExpr> {
    eval(&parse(text)?)
}
