//! Expression parser for operators, rational functions and small
//! multivariate polynomials.
//!
//! Grammar:
//!   expr   := term (('+' | '-') term)*
//!   term   := factor (('*' | '/') factor)*
//!   factor := base ('^' uint)?
//!   base   := '(' expr ')' | 'x' | 'y' | 'z' | 'Dx' | int | '-' factor
//!
//! Implicit multiplication is not supported. Division by anything containing
//! Dx is rejected, as is a power whose base contains Dx unless the base is
//! literally Dx. In operator context the variable t is accepted as an alias
//! for x, matching the usual display of walk operators.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use pcurv_core::arith::{Poly, RatFun, Rationals};
use pcurv_core::ore::DiffOp;
use pcurv_core::series::diagonal::{MPoly, MultiRatFun};
use pcurv_core::series::BivarPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { pos: usize, expected: String },
    NonpolynomialExponent { pos: usize },
    DxInDenominator { pos: usize },
    DxInPowBase { pos: usize },
    VariableNotAllowed { pos: usize, name: String },
    NotARationalFunction,
    NotAPolynomial,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, expected } => {
                write!(f, "syntax error at position {pos}: expected {expected}")
            }
            ParseError::NonpolynomialExponent { pos } => {
                write!(f, "exponent at position {pos} must be a nonnegative integer literal")
            }
            ParseError::DxInDenominator { pos } => {
                write!(f, "Dx in a divisor at position {pos}")
            }
            ParseError::DxInPowBase { pos } => {
                write!(f, "power base containing Dx at position {pos} (only Dx^k is allowed)")
            }
            ParseError::VariableNotAllowed { pos, name } => {
                write!(f, "variable {name} at position {pos} is not allowed here")
            }
            ParseError::NotARationalFunction => {
                write!(f, "expression is an operator of positive order, not a rational function")
            }
            ParseError::NotAPolynomial => write!(f, "expression is not a polynomial"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Expression tree produced by the grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Int(BigInt),
    Var(char),
    Dx,
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u64),
    Neg(Box<ExprAst>),
}

impl ExprAst {
    fn contains_dx(&self) -> bool {
        match self {
            ExprAst::Dx => true,
            ExprAst::Int(_) | ExprAst::Var(_) => false,
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) | ExprAst::Mul(a, b) | ExprAst::Div(a, b) => {
                a.contains_dx() || b.contains_dx()
            }
            ExprAst::Pow(a, _) => a.contains_dx(),
            ExprAst::Neg(a) => a.contains_dx(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Dx,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            }
            'D' => {
                if i + 1 < bytes.len() && bytes[i + 1] as char == 'x' {
                    out.push((i, Tok::Dx));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax { pos: i, expected: "Dx".into() });
                }
            }
            'x' | 'y' | 'z' | 't' => {
                out.push((i, Tok::Var(c)));
                i += 1;
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: "a number, variable, Dx, operator or parenthesis".into(),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = ExprAst::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = ExprAst::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = ExprAst::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.here();
                    self.bump();
                    let rhs = self.factor()?;
                    if rhs.contains_dx() {
                        return Err(ParseError::DxInDenominator { pos });
                    }
                    acc = ExprAst::Div(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            let pos = self.here();
            self.bump();
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return Err(ParseError::NonpolynomialExponent { pos: self.here() });
            };
            self.bump();
            let e: u64 = n
                .try_into()
                .map_err(|_| ParseError::NonpolynomialExponent { pos })?;
            if base.contains_dx() && base != ExprAst::Dx {
                return Err(ParseError::DxInPowBase { pos });
            }
            return Ok(ExprAst::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax { pos: self.here(), expected: "')'".into() }),
                }
            }
            Some(Tok::Var(c)) => Ok(ExprAst::Var(c)),
            Some(Tok::Dx) => Ok(ExprAst::Dx),
            Some(Tok::Int(n)) => Ok(ExprAst::Int(n)),
            Some(Tok::Minus) => Ok(ExprAst::Neg(Box::new(self.factor()?))),
            _ => Err(ParseError::Syntax {
                pos,
                expected: "'(', a number, x, Dx or '-'".into(),
            }),
        }
    }
}

/// Parses the full text into an expression tree.
pub fn parse_expr(text: &str) -> Result<ExprAst, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax { pos: p.here(), expected: "end of input".into() });
    }
    Ok(e)
}

fn q() -> Rationals {
    Rationals
}

fn eval_operator(ast: &ExprAst) -> Result<DiffOp<Rationals>, ParseError> {
    match ast {
        ExprAst::Int(n) => Ok(DiffOp::from_ratfun(RatFun::constant(
            q(),
            BigRational::from_integer(n.clone()),
        ))),
        ExprAst::Var('x') | ExprAst::Var('t') => {
            Ok(DiffOp::from_ratfun(RatFun::from_poly(Poly::x(q()))))
        }
        ExprAst::Var(c) => Err(ParseError::VariableNotAllowed { pos: 0, name: c.to_string() }),
        ExprAst::Dx => Ok(DiffOp::partial(q())),
        ExprAst::Add(a, b) => Ok(eval_operator(a)?.add(&eval_operator(b)?)),
        ExprAst::Sub(a, b) => Ok(eval_operator(a)?.sub(&eval_operator(b)?)),
        ExprAst::Mul(a, b) => Ok(eval_operator(a)?.mul(&eval_operator(b)?)),
        ExprAst::Div(a, b) => {
            let num = eval_operator(a)?;
            let den = eval_operator(b)?;
            if den.degree_or_zero() > 0 || den.is_zero() {
                return Err(ParseError::DxInDenominator { pos: 0 });
            }
            Ok(num.mul(&DiffOp::from_ratfun(den.coeff(0).inv())))
        }
        ExprAst::Pow(a, e) => Ok(eval_operator(a)?.pow(*e)),
        ExprAst::Neg(a) => Ok(eval_operator(a)?.neg()),
    }
}

/// Parses an operator over Q(x), normalizing with the commutation rule.
pub fn parse_operator(text: &str) -> Result<DiffOp<Rationals>, ParseError> {
    eval_operator(&parse_expr(text)?)
}

/// Parses a rational function (an operator of order 0).
pub fn parse_ratfun(text: &str) -> Result<RatFun<Rationals>, ParseError> {
    let op = parse_operator(text)?;
    if op.is_zero() {
        return Ok(RatFun::zero(q()));
    }
    if op.degree_or_zero() > 0 {
        return Err(ParseError::NotARationalFunction);
    }
    Ok(op.coeff(0))
}

/// Parses a univariate polynomial over Q.
pub fn parse_poly(text: &str) -> Result<Poly<Rationals>, ParseError> {
    let f = parse_ratfun(text)?;
    if !f.is_polynomial() {
        return Err(ParseError::NotAPolynomial);
    }
    Ok(f.num().clone())
}

fn eval_multivariate(ast: &ExprAst, vars: &[char]) -> Result<MultiRatFun, ParseError> {
    let arity = vars.len();
    match ast {
        ExprAst::Int(n) => Ok(MultiRatFun::from_poly(MPoly::constant(
            arity,
            BigRational::from_integer(n.clone()),
        ))),
        ExprAst::Var(c) => {
            let Some(v) = vars.iter().position(|w| w == c) else {
                return Err(ParseError::VariableNotAllowed { pos: 0, name: c.to_string() });
            };
            Ok(MultiRatFun::from_poly(MPoly::var(arity, v)))
        }
        ExprAst::Dx => Err(ParseError::VariableNotAllowed { pos: 0, name: "Dx".into() }),
        ExprAst::Add(a, b) => {
            let (a, b) = (eval_multivariate(a, vars)?, eval_multivariate(b, vars)?);
            Ok(MultiRatFun {
                num: a.num.mul(&b.den).add(&b.num.mul(&a.den)),
                den: a.den.mul(&b.den),
            })
        }
        ExprAst::Sub(a, b) => {
            let (a, b) = (eval_multivariate(a, vars)?, eval_multivariate(b, vars)?);
            Ok(MultiRatFun {
                num: a.num.mul(&b.den).sub(&b.num.mul(&a.den)),
                den: a.den.mul(&b.den),
            })
        }
        ExprAst::Mul(a, b) => {
            let (a, b) = (eval_multivariate(a, vars)?, eval_multivariate(b, vars)?);
            Ok(MultiRatFun { num: a.num.mul(&b.num), den: a.den.mul(&b.den) })
        }
        ExprAst::Div(a, b) => {
            let (a, b) = (eval_multivariate(a, vars)?, eval_multivariate(b, vars)?);
            if b.num.is_zero() {
                return Err(ParseError::Syntax { pos: 0, expected: "a nonzero divisor".into() });
            }
            Ok(MultiRatFun { num: a.num.mul(&b.den), den: a.den.mul(&b.num) })
        }
        ExprAst::Pow(a, e) => {
            let a = eval_multivariate(a, vars)?;
            Ok(MultiRatFun { num: a.num.pow(*e), den: a.den.pow(*e) })
        }
        ExprAst::Neg(a) => {
            let a = eval_multivariate(a, vars)?;
            Ok(MultiRatFun { num: a.num.neg(), den: a.den })
        }
    }
}

/// Parses a rational function in the variables x, y and optionally z.
pub fn parse_multivariate(text: &str, arity: usize) -> Result<MultiRatFun, ParseError> {
    let vars: &[char] = if arity == 2 { &['x', 'y'] } else { &['x', 'y', 'z'] };
    eval_multivariate(&parse_expr(text)?, vars)
}

/// Parses a bivariate polynomial P(x, y) over Q.
pub fn parse_bivar_poly(text: &str) -> Result<BivarPoly<Rationals>, ParseError> {
    let f = eval_multivariate(&parse_expr(text)?, &['x', 'y'])?;
    let den = f.den;
    let Some(c) = den.terms().iter().find(|(e, _)| *e == [0, 0, 0]) else {
        return Err(ParseError::NotAPolynomial);
    };
    if den.terms().len() != 1 {
        return Err(ParseError::NotAPolynomial);
    }
    let scale = BigRational::from_integer(1.into()) / &c.1;
    // regroup by y-degree
    let ydeg = f.num.terms().iter().map(|(e, _)| e[1]).max().unwrap_or(0);
    let mut cols: Vec<Vec<BigRational>> = vec![Vec::new(); ydeg + 1];
    for (e, coeff) in f.num.terms() {
        let col = &mut cols[e[1]];
        while col.len() <= e[0] {
            col.push(BigRational::from_integer(0.into()));
        }
        col[e[0]] = coeff * &scale;
    }
    Ok(BivarPoly::new(cols.into_iter().map(|c| Poly::new(q(), c)).collect()))
}

/// Parses a comma-separated list of rationals like `1/2,-1/12,3`.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, ParseError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<BigRational>()
                .map_err(|_| ParseError::Syntax { pos: 0, expected: "a rational like 3 or -1/12".into() })
        })
        .collect()
}
