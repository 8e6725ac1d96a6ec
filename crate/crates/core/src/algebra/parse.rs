//! Expression grammar for polynomial and ν-series inputs.
//!
//! ```text
//! expr    := operand (binop operand)*        -- precedence climbing
//! binop   := '+' | '-' | '*' | '/'           -- '/' only by nonzero constants
//! operand := ('+' | '-') operand | atom ('^' INT)?
//! atom    := INT | 'x' INT | 'nu' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. `nu` is accepted only by [`parse_nu_series`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::{NuSeries, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    NonConstantDivisor,
    DivisionByZero,
    ReservedNu,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax(m) => write!(f, "syntax error: {m}"),
            Self::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Self::NonConstantDivisor => write!(f, "division by a non-constant expression"),
            Self::DivisionByZero => write!(f, "division by zero"),
            Self::ReservedNu => write!(f, "`nu` is only allowed in series contexts"),
        }
    }
}

/// Parse failure; `position` is a 0-based character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Nu,
    Op(char),
    LParen,
    RParen,
}

struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = i;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), start));
                continue;
            }
            if c.is_ascii_alphabetic() {
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = if word == "nu" {
                    Tok::Nu
                } else if let Some(idx) = word
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) && !d.starts_with('0'))
                    .and_then(|d| d.parse::<usize>().ok())
                {
                    Tok::Var(idx)
                } else {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnknownVariable(word),
                        position: start,
                    });
                };
                out.push((tok, start));
                continue;
            }
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError {
                        kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
                        position: start,
                    })
                }
            };
            out.push((tok, start));
            i += 1;
        }
        Ok(out)
    }
}

/// Intermediate value: polynomial in ν with polynomial coefficients.
#[derive(Clone)]
struct NuPoly(Vec<Poly>);

impl NuPoly {
    fn constant(c: Rational) -> Self {
        NuPoly(vec![Poly::constant(c)])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Poly::is_zero) {
            self.0.pop();
        }
        self
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        NuPoly(
            (0..n)
                .map(|k| {
                    let z = Poly::zero();
                    self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z)
                })
                .collect(),
        )
        .trimmed()
    }

    fn neg(&self) -> Self {
        NuPoly(self.0.iter().map(|p| -p).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return NuPoly(Vec::new());
        }
        let mut out = vec![Poly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        NuPoly(out).trimmed()
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.0.as_slice() {
            [] => Some(Rational::zero()),
            [p] if p.is_constant() => Some(p.constant_term()),
            _ => None,
        }
    }
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    dim: usize,
    allow_nu: bool,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            kind,
            position: self.here(),
        })
    }

    fn binop_prec(t: &Tok) -> Option<u8> {
        match t {
            Tok::Op('+') | Tok::Op('-') => Some(1),
            Tok::Op('*') | Tok::Op('/') => Some(2),
            _ => None,
        }
    }

    fn expr(&mut self, min_prec: u8) -> Result<NuPoly, ParseError> {
        let mut lhs = self.operand()?;
        while let Some(prec) = self.peek().and_then(Self::binop_prec) {
            if prec < min_prec {
                break;
            }
            let op = match self.peek() {
                Some(Tok::Op(c)) => *c,
                _ => unreachable!(),
            };
            let op_pos = self.here();
            self.pos += 1;
            let rhs = self.expr(prec + 1)?;
            lhs = match op {
                '+' => lhs.add(&rhs),
                '-' => lhs.add(&rhs.neg()),
                '*' => lhs.mul(&rhs),
                '/' => {
                    let c = rhs.as_constant().ok_or(ParseError {
                        kind: ParseErrorKind::NonConstantDivisor,
                        position: op_pos,
                    })?;
                    if c.is_zero() {
                        return Err(ParseError {
                            kind: ParseErrorKind::DivisionByZero,
                            position: op_pos,
                        });
                    }
                    lhs.mul(&NuPoly::constant(c.recip()))
                }
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn operand(&mut self) -> Result<NuPoly, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.operand()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.operand()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(&Tok::Op('^')) {
                    self.pos += 1;
                    let n = match self.peek() {
                        Some(Tok::Int(n)) => n.to_u32().filter(|&n| n <= 255),
                        _ => return self.err(ParseErrorKind::Syntax("exponent must be a nonnegative integer literal".into())),
                    };
                    let Some(n) = n else {
                        return self.err(ParseErrorKind::Syntax("exponent too large".into()));
                    };
                    self.pos += 1;
                    let mut acc = NuPoly::constant(Rational::one());
                    for _ in 0..n {
                        acc = acc.mul(&base);
                    }
                    Ok(acc)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<NuPoly, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err(ParseErrorKind::Syntax("unexpected end of input".into()));
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(NuPoly::constant(Rational::from_integer(n)))
            }
            Tok::Var(i) => {
                if i == 0 || i > self.dim {
                    return self.err(ParseErrorKind::UnknownVariable(format!("x{i}")));
                }
                self.pos += 1;
                Ok(NuPoly(vec![Poly::var(i - 1)]))
            }
            Tok::Nu => {
                if !self.allow_nu {
                    return self.err(ParseErrorKind::ReservedNu);
                }
                self.pos += 1;
                Ok(NuPoly(vec![Poly::zero(), Poly::one()]))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr(0)?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err(ParseErrorKind::Syntax("expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::RParen | Tok::Op(_) => self.err(ParseErrorKind::Syntax("expected an operand".into())),
        }
    }
}

fn parse_nupoly(text: &str, dim: usize, allow_nu: bool) -> Result<NuPoly, ParseError> {
    let toks = Lexer::run(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        dim,
        allow_nu,
        end: text.chars().count(),
    };
    let v = p.expr(0)?;
    if p.pos != toks.len() {
        return p.err(ParseErrorKind::Syntax("unexpected trailing input".into()));
    }
    Ok(v)
}

/// Parses a polynomial in x1…x{dim}.
pub fn parse_poly(text: &str, dim: usize) -> Result<Poly, ParseError> {
    let v = parse_nupoly(text, dim, false)?;
    Ok(v.0.into_iter().next().unwrap_or_default())
}

/// Parses a ν-series expression; powers of ν above `order` are discarded.
pub fn parse_nu_series(text: &str, dim: usize, order: usize) -> Result<NuSeries, ParseError> {
    let v = parse_nupoly(text, dim, true)?;
    Ok(NuSeries::from_coeffs(v.0, order))
}
