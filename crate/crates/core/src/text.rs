//! Polynomial expression syntax.
//!
//! ```text
//! expression := term (('+' | '-') term)*
//! term       := ['-'] factor ('*' factor)*
//! factor     := base ('^' nonneg-int)?
//! base       := rational | variable | '(' expression ')'
//! rational   := int ('/' posint)?
//! variable   := 'x' | 'y' | 'z' | 'x' posint
//! ```
//!
//! Whitespace is insignificant. Implicit multiplication is rejected, and the
//! aliases `x, y, z` cannot be mixed with indexed names `x1, x2, …`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

/// Byte range into the parsed text.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    BadExponent(String),
    MixedVariableNames,
    DimensionConflict { declared: usize, used: usize },
    Empty,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable {v:?}"),
            ParseErrorKind::BadExponent(msg) => write!(f, "bad exponent: {msg}"),
            ParseErrorKind::MixedVariableNames => {
                f.write_str("variables x, y, z cannot be mixed with x1, x2, ...")
            }
            ParseErrorKind::DimensionConflict { declared, used } => write!(
                f,
                "expression uses variable {used} but the dimension is {declared}"
            ),
            ParseErrorKind::Empty => f.write_str("empty expression"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
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
            Tok::Int(n) => format!("integer {n}"),
            Tok::Var(v) => format!("variable {v}"),
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

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((
                    Tok::Int(text[start..i].parse().expect("digits")),
                    SourceSpan::new(start, i),
                ));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Var(text[start..i].to_string()), SourceSpan::new(start, i)));
                continue;
            }
            _ => {
                let len = text[start..].chars().next().map_or(1, char::len_utf8);
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!(
                        "unexpected character {:?}",
                        &text[start..start + len]
                    )),
                    span: SourceSpan::new(start, start + len),
                });
            }
        };
        i += 1;
        out.push((tok, SourceSpan::new(start, i)));
    }
    out.push((Tok::End, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum NameStyle {
    Alias,
    Indexed,
}

/// Expression tree kept only long enough to learn the dimension.
enum Node {
    Const(Rational),
    Var(usize),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Pow(Box<Node>, u32),
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    style: Option<NameStyle>,
    max_var: Option<(usize, SourceSpan)>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Syntax(format!("expected {wanted}, found {}", self.peek().describe())),
            span: self.span(),
        }
    }

    fn expression(&mut self) -> Result<Node, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Node::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Node::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Node::Neg(Box::new(self.term()?)));
        }
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Node::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, span) = self.bump();
        match tok {
            Tok::Int(n) => {
                let e = n.to_u32().ok_or(ParseError {
                    kind: ParseErrorKind::BadExponent(format!("{n} is too large")),
                    span,
                })?;
                Ok(Node::Pow(Box::new(base), e))
            }
            Tok::Minus => Err(ParseError {
                kind: ParseErrorKind::BadExponent("negative exponents are not allowed".into()),
                span,
            }),
            other => Err(ParseError {
                kind: ParseErrorKind::BadExponent(format!(
                    "expected a nonnegative integer literal, found {}",
                    other.describe()
                )),
                span,
            }),
        }
    }

    fn base(&mut self) -> Result<Node, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(Node::Const(Rational::from_integer(n)));
                }
                self.bump();
                let (tok, span) = self.bump();
                match tok {
                    Tok::Int(d) if !d.is_zero() => Ok(Node::Const(Rational::new(n, d))),
                    Tok::Int(_) => Err(ParseError {
                        kind: ParseErrorKind::Syntax("zero denominator".into()),
                        span,
                    }),
                    other => Err(ParseError {
                        kind: ParseErrorKind::Syntax(format!(
                            "expected a positive integer denominator, found {}",
                            other.describe()
                        )),
                        span,
                    }),
                }
            }
            Tok::Var(name) => {
                let (_, span) = self.bump();
                self.variable(&name, span)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expression()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }

    fn variable(&mut self, name: &str, span: SourceSpan) -> Result<Node, ParseError> {
        let unknown = || ParseError {
            kind: ParseErrorKind::UnknownVariable(name.to_string()),
            span,
        };
        let (index, style) = match name {
            "x" => (0, NameStyle::Alias),
            "y" => (1, NameStyle::Alias),
            "z" => (2, NameStyle::Alias),
            _ => {
                let digits = name.strip_prefix('x').ok_or_else(unknown)?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
                    return Err(unknown());
                }
                let k: usize = digits.parse().map_err(|_| unknown())?;
                (k - 1, NameStyle::Indexed)
            }
        };
        match self.style {
            Some(s) if s != style => {
                return Err(ParseError {
                    kind: ParseErrorKind::MixedVariableNames,
                    span,
                })
            }
            _ => self.style = Some(style),
        }
        if self.max_var.is_none_or(|(m, _)| index > m) {
            self.max_var = Some((index, span));
        }
        Ok(Node::Var(index))
    }
}

fn build(node: &Node, dim: usize) -> Polynomial {
    match node {
        Node::Const(c) => Polynomial::constant(dim, c.clone()),
        Node::Var(i) => Polynomial::var(dim, *i),
        Node::Add(a, b) => build(a, dim) + build(b, dim),
        Node::Sub(a, b) => build(a, dim) - build(b, dim),
        Node::Mul(a, b) => build(a, dim) * build(b, dim),
        Node::Neg(a) => -build(a, dim),
        Node::Pow(a, e) => build(a, dim).pow(*e),
    }
}

/// Parses `text` into a canonical polynomial. Without `dim` the dimension is
/// the highest variable index used (1 for constants).
pub fn parse_polynomial(text: &str, dim: Option<usize>) -> Result<Polynomial, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError {
            kind: ParseErrorKind::Empty,
            span: SourceSpan::new(0, text.len()),
        });
    }
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        style: None,
        max_var: None,
    };
    let node = parser.expression()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    let used = parser.max_var.map_or(1, |(i, _)| i + 1);
    let dim = match dim {
        Some(0) => {
            return Err(ParseError {
                kind: ParseErrorKind::DimensionConflict { declared: 0, used },
                span: SourceSpan::new(0, text.len()),
            })
        }
        Some(d) if d < used => {
            let span = parser.max_var.map_or(SourceSpan::new(0, text.len()), |(_, s)| s);
            return Err(ParseError {
                kind: ParseErrorKind::DimensionConflict { declared: d, used },
                span,
            });
        }
        Some(d) => d,
        None => used,
    };
    Ok(build(&node, dim))
}

/// Canonical text: terms in descending graded-lex order, coefficients as
/// `a` or `a/b`, `0` for the zero polynomial.
pub fn format_polynomial(p: &Polynomial) -> String {
    p.to_string()
}

/// Formats a monomial list, e.g. a basis, for diagnostics.
pub fn format_monomials(ms: &[Monomial]) -> String {
    let parts: Vec<String> = ms.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
