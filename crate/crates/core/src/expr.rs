//! Concrete syntax for algebra elements.
//!
//! ```text
//! expr   := '-'* term (('+' | '-') '-'* term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' '-'? int)?
//! atom   := int ('/' int)? | 'q' | 'k' | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! `*` is left-associative and the parse tree keeps explicit groupings, so
//! `(x*y)*y` and `x*(y*y)` stay distinct when evaluated with a
//! non-associative product. Only `q` may carry a negative exponent.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coefficients::{ParamScalar, Rational};
use crate::error::{Error, Result};
use crate::hom::{ProductHandle, ProductMode};
use crate::ore::{AlgebraPreset, OrePoly, PresetName};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Q,
    K,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(Rational),
    Param(Param),
    Gen(Generator),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    /// Explicit parentheses in the source.
    Group(Box<Expr>),
}

impl Expr {
    /// Whether `x` or `y` occurs anywhere below this node.
    pub fn has_generators(&self) -> bool {
        match self {
            Expr::Literal(_) | Expr::Param(_) => false,
            Expr::Gen(_) => true,
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Group(e) => e.has_generators(),
            Expr::Add(a, b) | Expr::Mul(a, b) => a.has_generators() || b.has_generators(),
        }
    }

    /// Factors of an unparenthesized product chain, leftmost first.
    fn chain_factors(&self) -> Vec<&Expr> {
        match self {
            Expr::Mul(a, b) => {
                let mut v = a.chain_factors();
                v.push(b);
                v
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(r) => write!(f, "{r}"),
            Expr::Param(Param::Q) => f.write_str("q"),
            Expr::Param(Param::K) => f.write_str("k"),
            Expr::Gen(Generator::X) => f.write_str("x"),
            Expr::Gen(Generator::Y) => f.write_str("y"),
            Expr::Neg(e) => write!(f, "-{e}"),
            Expr::Add(a, b) => match b.as_ref() {
                Expr::Neg(inner) => write!(f, "{a} - {inner}"),
                _ => write!(f, "{a} + {b}"),
            },
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(e, n) => write!(f, "{e}^{n}"),
            Expr::Group(e) => write!(f, "({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i).map_or(src.len(), |(p, _)| *p);
                let digits = &src[chars[start].0..end];
                out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            'q' | 'k' | 'x' | 'y' => Tok::Ident(c),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Parse {
                    pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.signed_term()?;
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.signed_term()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(&Tok::Minus) {
                let rhs = self.signed_term()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(Expr::Neg(Box::new(rhs))));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn signed_term(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            Ok(Expr::Neg(Box::new(self.signed_term()?)))
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            let rhs = self.factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Tok::Minus);
        let exp = match self.peek() {
            Some(Tok::Int(n)) => n.clone(),
            _ => return self.error("expected an integer exponent"),
        };
        let exp: i64 = match i64::try_from(&exp) {
            Ok(e) if e <= i32::MAX as i64 => e,
            _ => return self.error("exponent too large"),
        };
        if negative && base != Expr::Param(Param::Q) {
            return self.error("negative exponents are only allowed on q");
        }
        self.at += 1;
        Ok(Expr::Pow(Box::new(base), if negative { -exp } else { exp }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        match tok {
            Tok::Int(n) => {
                self.at += 1;
                let mut value = Rational::from_integer(n);
                if self.eat(&Tok::Slash) {
                    let denom = match self.peek() {
                        Some(Tok::Int(d)) if !d.is_zero() => d.clone(),
                        Some(Tok::Int(_)) => return self.error("division by zero"),
                        _ => return self.error("expected an integer denominator"),
                    };
                    self.at += 1;
                    value /= Rational::from_integer(denom);
                }
                Ok(Expr::Literal(value))
            }
            Tok::Ident(c) => {
                self.at += 1;
                Ok(match c {
                    'q' => Expr::Param(Param::Q),
                    'k' => Expr::Param(Param::K),
                    'x' => Expr::Gen(Generator::X),
                    _ => Expr::Gen(Generator::Y),
                })
            }
            Tok::LParen => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("expected `)`");
                }
                Ok(Expr::Group(Box::new(inner)))
            }
            _ => self.error("expected a number, q, k, x, y or `(`"),
        }
    }
}

/// Parse an expression; errors carry the byte offset of the offending token.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut parser = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = parser.expr()?;
    if parser.at < parser.toks.len() {
        return parser.error("unexpected token (implicit multiplication is not supported)");
    }
    Ok(e)
}

/// Which algebra and product an expression is evaluated in, and the values
/// bound to `q` and `k` (symbolic or rational).
#[derive(Clone, Debug)]
pub struct EvalConfig {
    handle: ProductHandle,
    q: ParamScalar,
    k: ParamScalar,
}

impl EvalConfig {
    pub fn new(algebra: PresetName, mode: ProductMode, q: ParamScalar, k: ParamScalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::NonInvertibleQ);
        }
        let preset = AlgebraPreset::with_parameters(algebra, q.clone(), k.clone())?;
        Ok(EvalConfig {
            handle: ProductHandle::new(preset, mode),
            q,
            k,
        })
    }

    pub fn symbolic(algebra: PresetName, mode: ProductMode) -> Self {
        Self::new(algebra, mode, ParamScalar::q(), ParamScalar::k()).expect("symbolic presets are valid")
    }

    pub fn handle(&self) -> &ProductHandle {
        &self.handle
    }

    pub fn q(&self) -> &ParamScalar {
        &self.q
    }

    pub fn k(&self) -> &ParamScalar {
        &self.k
    }
}

/// An evaluated element plus any warnings about ambiguous groupings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: OrePoly,
    pub diagnostics: Vec<String>,
}

/// Evaluate bottom-up. Products involving a generator-free factor are scalar
/// multiplications; everything else uses the configured product.
pub fn evaluate_expr(e: &Expr, cfg: &EvalConfig) -> Result<Evaluation> {
    let mut diagnostics = Vec::new();
    if cfg.handle.mode() == ProductMode::Star {
        chain_diagnostics(e, &mut diagnostics);
    }
    let value = eval(e, cfg)?;
    Ok(Evaluation { value, diagnostics })
}

fn chain_diagnostics(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Mul(..) => {
            let factors = e.chain_factors();
            if factors.iter().filter(|f| f.has_generators()).count() >= 3 {
                out.push(format!(
                    "warning: unparenthesized product `{e}` evaluated left-associatively"
                ));
            }
            for f in factors {
                chain_diagnostics(f, out);
            }
        }
        Expr::Pow(base, n) => {
            if *n >= 3 && base.has_generators() {
                out.push(format!("warning: power `{e}` expanded left-associatively"));
            }
            chain_diagnostics(base, out);
        }
        Expr::Neg(inner) | Expr::Group(inner) => chain_diagnostics(inner, out),
        Expr::Add(a, b) => {
            chain_diagnostics(a, out);
            chain_diagnostics(b, out);
        }
        Expr::Literal(_) | Expr::Param(_) | Expr::Gen(_) => {}
    }
}

fn scalar_of(p: &OrePoly) -> ParamScalar {
    p.as_scalar().expect("generator-free expressions evaluate to scalars")
}

fn eval(e: &Expr, cfg: &EvalConfig) -> Result<OrePoly> {
    Ok(match e {
        Expr::Literal(r) => OrePoly::scalar(ParamScalar::constant(r.clone())),
        Expr::Param(Param::Q) => OrePoly::scalar(cfg.q.clone()),
        Expr::Param(Param::K) => OrePoly::scalar(cfg.k.clone()),
        Expr::Gen(Generator::X) => OrePoly::x(),
        Expr::Gen(Generator::Y) => OrePoly::y(),
        Expr::Neg(inner) => -eval(inner, cfg)?,
        Expr::Group(inner) => eval(inner, cfg)?,
        Expr::Add(a, b) => eval(a, cfg)? + eval(b, cfg)?,
        Expr::Mul(a, b) => {
            let (va, vb) = (eval(a, cfg)?, eval(b, cfg)?);
            if !a.has_generators() {
                vb.scale(&scalar_of(&va))
            } else if !b.has_generators() {
                va.scale(&scalar_of(&vb))
            } else {
                cfg.handle.mul(&va, &vb)
            }
        }
        Expr::Pow(_, n) if *n < 0 => OrePoly::scalar(q_power(cfg, *n)?),
        Expr::Pow(base, n) => {
            let v = eval(base, cfg)?;
            let n = *n as u32;
            if !base.has_generators() {
                OrePoly::scalar(scalar_of(&v).pow(n))
            } else if n == 0 {
                OrePoly::one()
            } else {
                let mut acc = v.clone();
                for _ in 1..n {
                    acc = cfg.handle.mul(&acc, &v);
                }
                acc
            }
        }
    })
}

fn q_power(cfg: &EvalConfig, n: i64) -> Result<ParamScalar> {
    if let Some(c) = cfg.q.as_constant() {
        if c.is_zero() {
            return Err(Error::NonInvertibleQ);
        }
        return Ok(ParamScalar::constant(c.pow(n as i32)));
    }
    if cfg.q == ParamScalar::q() {
        return Ok(ParamScalar::monomial(n as i32, 0, 0));
    }
    Err(Error::NonInvertibleQ)
}

/// Parse and evaluate in one step.
pub fn eval_str(src: &str, cfg: &EvalConfig) -> Result<Evaluation> {
    evaluate_expr(&parse(src)?, cfg)
}
