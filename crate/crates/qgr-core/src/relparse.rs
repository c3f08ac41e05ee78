//! Parser for relation expressions: sums and differences of products of
//! generator names, integer literals, and fraction literals `a/b`, with
//! parentheses. Multiplication is explicit (`*`) and order-preserving;
//! juxtaposition is a syntax error. The grammar:
//!
//! ```text
//! expr   := [-] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := integer [ "/" integer ] | name | "(" expr ")"
//! ```

use crate::free_algebra::{NCPoly, Presentation};
use crate::scalar::{Scalar, ScalarError};
use num::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{name}` at byte {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("division by zero in literal at byte {position}")]
    DivisionByZeroLiteral { position: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Plus => "`+`".to_string(),
            Tok::Minus => "`-`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Slash => "`/`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
        }
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' => i += 1,
            b'+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: BigInt = s[start..i].parse().expect("ascii digits");
                out.push((Tok::Int(digits), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Name(s[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("unexpected character `{}`", other as char),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    context: &'a Presentation,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let message = match self.peek() {
            Some((tok, _)) => format!("expected {expected}, found {}", tok.describe()),
            None => format!("expected {expected}, found end of input"),
        };
        ParseError::Syntax { position: self.here(), message }
    }

    fn expr(&mut self) -> Result<NCPoly, ParseError> {
        let field = self.context.field();
        let mut negate_first = false;
        if let Some((Tok::Minus, _)) = self.peek() {
            self.pos += 1;
            negate_first = true;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs).expect("same field");
                }
                Some((Tok::Minus, _)) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs).expect("same field");
                }
                _ => break,
            }
        }
        debug_assert_eq!(acc.field(), field);
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.factor()?;
        while let Some((Tok::Star, _)) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.mul(&rhs).expect("same field");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPoly, ParseError> {
        let field = self.context.field();
        match self.next() {
            Some((Tok::Int(num), pos)) => {
                // optional fraction tail
                if let Some((Tok::Slash, _)) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some((Tok::Int(den), dpos)) => {
                            if den == BigInt::from(0) {
                                return Err(ParseError::DivisionByZeroLiteral { position: dpos });
                            }
                            let s = Scalar::from_fraction(field, &num, &den)?;
                            Ok(NCPoly::from_scalar(s))
                        }
                        _ => {
                            self.pos -= usize::from(self.peek().is_some());
                            Err(self.unexpected("an integer after `/`"))
                        }
                    }
                } else {
                    let _ = pos;
                    Ok(NCPoly::from_scalar(Scalar::from_bigint(field, &num)))
                }
            }
            Some((Tok::Name(name), pos)) => match self.context.gen_index(&name) {
                Some(index) => Ok(self.context.gen_poly(index)),
                None => Err(ParseError::UnknownGenerator { name, position: pos }),
            },
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => {
                        self.pos -= usize::from(self.peek().is_some());
                        Err(self.unexpected("`)`"))
                    }
                }
            }
            other => {
                if other.is_some() {
                    self.pos -= 1;
                }
                Err(self.unexpected("a generator, a number, or `(`"))
            }
        }
    }
}

/// Parses an expression into a free-algebra element, resolving generator
/// names and scalar literals against the presentation's generators and
/// field.
pub fn parse_relation(s: &str, context: &Presentation) -> Result<NCPoly, ParseError> {
    let toks = lex(s)?;
    let mut parser = Parser { toks, pos: 0, context, end: s.len() };
    let poly = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("`+`, `-`, `*`, or end of input"));
    }
    Ok(poly)
}
