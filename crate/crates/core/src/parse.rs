//! Recursive-descent parser for the polynomial expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' INT)?
//! atom   := NUMBER ('/' NUMBER)? | 'j' | SYMBOL | '(' expr ')'
//! ```
//!
//! Numbers are integers or finite decimals; `a/b` is only accepted between two
//! literals and denotes a rational constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::chart::{Chart, Symbol};
use crate::expr::Expr;
use crate::split::SplitComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown symbol {name:?} for chart {chart}")]
    UnknownSymbol { name: String, chart: Chart },
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent must be a non-negative integer")]
    NonIntegerExponent,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("division by zero in rational literal")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: BigRational, integer: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num { value, .. } => format!("number {value}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' | '.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let int_part = &text[start..i];
                let mut frac_part = "";
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let fs = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    frac_part = &text[fs..i];
                    if int_part.is_empty() && frac_part.is_empty() {
                        return Err(ParseError {
                            position: start,
                            kind: ParseErrorKind::UnexpectedChar('.'),
                        });
                    }
                }
                let digits = format!("{int_part}{frac_part}");
                let numer: BigInt = digits.parse().unwrap_or_default();
                let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
                out.push((
                    start,
                    Tok::Num {
                        value: BigRational::new(numer, denom),
                        integer: text[start..i].bytes().all(|b| b.is_ascii_digit()),
                    },
                ));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                let ch = text[start..].chars().next().unwrap_or(other);
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> ParseError {
        let kind = match self.peek() {
            Tok::End => ParseErrorKind::UnexpectedEnd,
            t => ParseErrorKind::UnexpectedToken(t.describe()),
        };
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let err = |kind| ParseError { position: at, kind };
        match self.bump().1 {
            Tok::Minus => Err(err(ParseErrorKind::NegativeExponent)),
            Tok::Num { value, integer } => {
                if !integer || *self.peek() == Tok::Slash {
                    return Err(err(ParseErrorKind::NonIntegerExponent));
                }
                let e = value
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| err(ParseErrorKind::ExponentTooLarge))?;
                Ok(base.pow(e))
            }
            Tok::End => Err(err(ParseErrorKind::UnexpectedEnd)),
            _ => Err(err(ParseErrorKind::NonIntegerExponent)),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num { value, .. } => {
                self.bump();
                let mut value = value;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_at = self.offset();
                    match self.bump().1 {
                        Tok::Num { value: d, .. } => {
                            if d.is_zero() {
                                return Err(ParseError {
                                    position: den_at,
                                    kind: ParseErrorKind::ZeroDenominator,
                                });
                            }
                            value /= d;
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected());
                        }
                    }
                }
                Ok(Expr::constant(SplitComplex::real(value)))
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "j" {
                    return Ok(Expr::j());
                }
                match Symbol::from_name(&name).filter(|s| self.chart.contains(*s)) {
                    Some(s) => Ok(Expr::symbol(s)),
                    None => Err(ParseError {
                        position: at,
                        kind: ParseErrorKind::UnknownSymbol {
                            name,
                            chart: *self.chart,
                        },
                    }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `text` into a canonical expression over the symbols of `chart`.
pub fn parse(text: &str, chart: &Chart) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        chart,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e)
}
