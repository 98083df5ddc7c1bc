//! Terms over a signature, and exhaustive checking of user-declared identities.
//!
//! Terms use a prefix grammar:
//!
//! ```text
//! term     := "0" | variable | "(" head term+ ")"
//! head     := "+" | "-" | operation-name
//! identity := [ "forall" variable* "." ] term "=" term
//! ```
//!
//! `(+ a b)` is addition, `(- a)` negation, `(mul a b)` a named binary
//! operation and `(w a)` a named unary operation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::{Report, Witness};

use super::signature::validate_name;
use super::{OmegaGroup, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    Add(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Binary(String, Box<Term>, Box<Term>),
    Unary(String, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn binary(op: &str, a: Term, b: Term) -> Term {
        Term::Binary(op.to_string(), Box::new(a), Box::new(b))
    }

    pub fn unary(op: &str, a: Term) -> Term {
        Term::Unary(op.to_string(), Box::new(a))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Zero => {}
            Term::Neg(a) | Term::Unary(_, a) => a.collect_vars(out),
            Term::Add(a, b) | Term::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Resolves operation names and variables to indices.
    pub fn compile(&self, sig: &Signature, vars: &[String]) -> Result<CompiledTerm> {
        Ok(match self {
            Term::Var(v) => CompiledTerm::Var(
                vars.iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            ),
            Term::Zero => CompiledTerm::Zero,
            Term::Add(a, b) => CompiledTerm::Add(
                Box::new(a.compile(sig, vars)?),
                Box::new(b.compile(sig, vars)?),
            ),
            Term::Neg(a) => CompiledTerm::Neg(Box::new(a.compile(sig, vars)?)),
            Term::Binary(op, a, b) => {
                let idx = sig.binary_index(op).ok_or_else(|| {
                    if sig.unary_index(op).is_some() {
                        Error::Arity {
                            name: op.clone(),
                            expected: 1,
                            found: 2,
                        }
                    } else {
                        Error::UnknownOp(op.clone())
                    }
                })?;
                CompiledTerm::Binary(
                    idx,
                    Box::new(a.compile(sig, vars)?),
                    Box::new(b.compile(sig, vars)?),
                )
            }
            Term::Unary(op, a) => {
                let idx = sig.unary_index(op).ok_or_else(|| {
                    if sig.binary_index(op).is_some() {
                        Error::Arity {
                            name: op.clone(),
                            expected: 2,
                            found: 1,
                        }
                    } else {
                        Error::UnknownOp(op.clone())
                    }
                })?;
                CompiledTerm::Unary(idx, Box::new(a.compile(sig, vars)?))
            }
        })
    }
}

/// A term whose names have been resolved against a signature.
#[derive(Clone, Debug)]
pub enum CompiledTerm {
    Var(usize),
    Zero,
    Add(Box<CompiledTerm>, Box<CompiledTerm>),
    Neg(Box<CompiledTerm>),
    Binary(usize, Box<CompiledTerm>, Box<CompiledTerm>),
    Unary(usize, Box<CompiledTerm>),
}

impl CompiledTerm {
    pub fn eval(&self, g: &OmegaGroup, env: &[usize]) -> usize {
        match self {
            CompiledTerm::Var(i) => env[*i],
            CompiledTerm::Zero => 0,
            CompiledTerm::Add(a, b) => g.add(a.eval(g, env), b.eval(g, env)),
            CompiledTerm::Neg(a) => g.neg(a.eval(g, env)),
            CompiledTerm::Binary(op, a, b) => g.binary(*op, a.eval(g, env), b.eval(g, env)),
            CompiledTerm::Unary(op, a) => g.unary(*op, a.eval(g, env)),
        }
    }
}

/// Evaluates `t` in `g` under the variable assignment `env`.
pub fn eval_term(g: &OmegaGroup, t: &Term, env: &BTreeMap<String, usize>) -> Result<usize> {
    let vars: Vec<String> = env.keys().cloned().collect();
    let compiled = t.compile(g.signature(), &vars)?;
    let values: Vec<usize> = env.values().copied().collect();
    if let Some(bad) = values.iter().find(|&&v| v >= g.order()) {
        return Err(Error::OutOfRange {
            table: "environment".into(),
            position: "value".into(),
            value: *bad,
            bound: g.order(),
        });
    }
    Ok(compiled.eval(g, &values))
}

/// An equation between two terms, universally quantified over `vars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub vars: Vec<String>,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    /// Quantifies over the variables of both sides, in order of occurrence.
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let mut vars = lhs.variables();
        for v in rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        Identity { vars, lhs, rhs }
    }
}

/// Checks `id` for every assignment of its variables; every counterexample
/// is recorded under the law `identity`.
pub fn check_identity(g: &OmegaGroup, id: &Identity) -> Result<Report> {
    let lhs = id.lhs.compile(g.signature(), &id.vars)?;
    let rhs = id.rhs.compile(g.signature(), &id.vars)?;
    let mut report = Report::new();
    let k = id.vars.len();
    let n = g.order();
    let mut env = vec![0usize; k];
    loop {
        let l = lhs.eval(g, &env);
        let r = rhs.eval(g, &env);
        if l != r {
            let bindings: Vec<(String, usize)> =
                id.vars.iter().cloned().zip(env.iter().copied()).collect();
            report.record(
                "identity",
                Witness {
                    bindings,
                    sides: Some((l, r)),
                    note: None,
                },
            );
        }
        // odometer over n^k assignments, last variable fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(report);
            }
            i -= 1;
            env[i] += 1;
            if env[i] < n {
                break;
            }
            env[i] = 0;
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::Add(a, b) => write!(f, "(+ {a} {b})"),
            Term::Neg(a) => write!(f, "(- {a})"),
            Term::Binary(op, a, b) => write!(f, "({op} {a} {b})"),
            Term::Unary(op, a) => write!(f, "({op} {a})"),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            write!(f, "forall {}. ", self.vars.join(" "))?;
        }
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Dot,
    Equals,
    Atom(String),
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((Token::Open, col));
                i += 1;
            }
            ')' => {
                out.push((Token::Close, col));
                i += 1;
            }
            '.' => {
                out.push((Token::Dot, col));
                i += 1;
            }
            '=' => {
                out.push((Token::Equals, col));
                i += 1;
            }
            '+' | '-' => {
                out.push((Token::Atom(c.to_string()), col));
                i += 1;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Token::Atom(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(syntax(col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column,
        message: message.into(),
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn term(&mut self) -> Result<Term> {
        let col = self.col();
        match self.next() {
            Some(Token::Atom(a)) if a == "0" => Ok(Term::Zero),
            Some(Token::Atom(a)) if a == "+" || a == "-" => {
                Err(syntax(col, format!("operator `{a}` must follow `(`")))
            }
            Some(Token::Atom(a)) => {
                validate_name(&a).map_err(|_| syntax(col, format!("invalid variable `{a}`")))?;
                Ok(Term::Var(a))
            }
            Some(Token::Open) => {
                let head_col = self.col();
                let head = match self.next() {
                    Some(Token::Atom(h)) if h != "0" => h,
                    _ => return Err(syntax(head_col, "expected an operation after `(`")),
                };
                let mut args = Vec::new();
                while !matches!(self.peek(), Some(Token::Close) | None) {
                    args.push(self.term()?);
                }
                let close_col = self.col();
                if self.next() != Some(Token::Close) {
                    return Err(syntax(close_col, "expected `)`"));
                }
                let n = args.len();
                let arity_err = |expected| Error::Arity {
                    name: head.clone(),
                    expected,
                    found: n,
                };
                let mut args = args.into_iter();
                match (head.as_str(), n) {
                    ("+", 2) => Ok(Term::add(args.next().unwrap(), args.next().unwrap())),
                    ("+", _) => Err(arity_err(2)),
                    ("-", 1) => Ok(Term::neg(args.next().unwrap())),
                    ("-", _) => Err(arity_err(1)),
                    (op, 1) => {
                        validate_name(op).map_err(|_| syntax(head_col, "invalid operation name"))?;
                        Ok(Term::unary(op, args.next().unwrap()))
                    }
                    (op, 2) => {
                        validate_name(op).map_err(|_| syntax(head_col, "invalid operation name"))?;
                        Ok(Term::binary(op, args.next().unwrap(), args.next().unwrap()))
                    }
                    (_, _) => Err(syntax(head_col, "operations take one or two arguments")),
                }
            }
            Some(t) => Err(syntax(col, format!("unexpected token {t:?}"))),
            None => Err(syntax(col, "unexpected end of input")),
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        let mut p = Parser {
            tokens: tokenize(s)?,
            pos: 0,
            end_col: s.chars().count() + 1,
        };
        let t = p.term()?;
        if p.pos < p.tokens.len() {
            return Err(syntax(p.col(), "trailing input"));
        }
        Ok(t)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        let mut p = Parser {
            tokens: tokenize(s)?,
            pos: 0,
            end_col: s.chars().count() + 1,
        };
        let declared = if p.peek() == Some(&Token::Atom("forall".into())) {
            p.next();
            let mut vars = Vec::new();
            loop {
                let col = p.col();
                match p.next() {
                    Some(Token::Dot) => break,
                    Some(Token::Atom(v)) => {
                        validate_name(&v)
                            .map_err(|_| syntax(col, format!("invalid variable `{v}`")))?;
                        if vars.contains(&v) {
                            return Err(syntax(col, format!("variable `{v}` quantified twice")));
                        }
                        vars.push(v);
                    }
                    _ => return Err(syntax(col, "expected a variable or `.`")),
                }
            }
            Some(vars)
        } else {
            None
        };
        let lhs = p.term()?;
        let col = p.col();
        if p.next() != Some(Token::Equals) {
            return Err(syntax(col, "expected `=`"));
        }
        let rhs = p.term()?;
        if p.pos < p.tokens.len() {
            return Err(syntax(p.col(), "trailing input"));
        }
        match declared {
            Some(vars) => {
                for v in lhs.variables().into_iter().chain(rhs.variables()) {
                    if !vars.contains(&v) {
                        return Err(Error::UnboundVariable(v));
                    }
                }
                Ok(Identity { vars, lhs, rhs })
            }
            None => Ok(Identity::new(lhs, rhs)),
        }
    }
}
