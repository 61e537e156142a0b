//! Parser for integer polynomial expressions in variables `x1, x2, ...`.
//!
//! Grammar (whitespace insensitive): sums and differences of products of
//! powers, with parentheses; `^` takes a nonnegative integer exponent and
//! binds tighter than unary minus. Parenthesized expressions are expanded, so
//! the result is always a canonical sparse polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::jets::SparsePoly;

/// A syntax error, locating the offending byte in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Integer(BigInt),
    Variable(u32),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                tokens.push((start, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((start, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((start, Token::Star));
                i += 1;
            }
            b'^' => {
                tokens.push((start, Token::Caret));
                i += 1;
            }
            b'(' => {
                tokens.push((start, Token::Open));
                i += 1;
            }
            b')' => {
                tokens.push((start, Token::Close));
                i += 1;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let literal = &text[start..i];
                let value = literal
                    .parse::<BigInt>()
                    .expect("a digit string parses as an integer");
                tokens.push((start, Token::Integer(value)));
            }
            b'x' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return err(start, "expected a variable index after `x` (e.g. `x1`)");
                }
                let index: u32 = match text[digits_start..i].parse() {
                    Ok(index) => index,
                    Err(_) => return err(digits_start, "variable index is too large"),
                };
                if index == 0 {
                    return err(start, "variable indices start at 1 (`x0` is not allowed)");
                }
                tokens.push((start, Token::Variable(index)));
            }
            other => {
                return err(start, format!("unexpected character `{}`", other as char));
            }
        }
    }
    Ok(tokens)
}

/// Expanded polynomial under construction: sparse exponent map -> coefficient.
type Expanded = BTreeMap<BTreeMap<u32, u32>, BigInt>;

fn expanded_constant(value: BigInt) -> Expanded {
    let mut terms = Expanded::new();
    if !value.is_zero() {
        terms.insert(BTreeMap::new(), value);
    }
    terms
}

fn expanded_variable(index: u32) -> Expanded {
    let mut exponents = BTreeMap::new();
    exponents.insert(index, 1);
    let mut terms = Expanded::new();
    terms.insert(exponents, BigInt::one());
    terms
}

fn expanded_add(mut a: Expanded, b: Expanded) -> Expanded {
    for (exponents, coefficient) in b {
        let entry = a.entry(exponents.clone()).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            a.remove(&exponents);
        }
    }
    a
}

fn expanded_neg(a: Expanded) -> Expanded {
    a.into_iter().map(|(exponents, coefficient)| (exponents, -coefficient)).collect()
}

fn expanded_mul(a: &Expanded, b: &Expanded) -> Expanded {
    let mut out = Expanded::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut exponents = ea.clone();
            for (&variable, &exponent) in eb {
                *exponents.entry(variable).or_insert(0) += exponent;
            }
            let entry = out.entry(exponents).or_insert_with(BigInt::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, coefficient| !coefficient.is_zero());
    out
}

fn expanded_pow(base: &Expanded, exponent: u32) -> Expanded {
    let mut out = expanded_constant(BigInt::one());
    for _ in 0..exponent {
        out = expanded_mul(&out, base);
    }
    out
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    length: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, token)| token)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.length, |(position, _)| *position)
    }

    fn advance(&mut self) -> Option<(usize, Token)> {
        let token = self.tokens.get(self.index).cloned();
        self.index += 1;
        token
    }

    /// expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expanded, ParseError> {
        let mut value = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    value = expanded_add(value, self.term()?);
                }
                Some(Token::Minus) => {
                    self.advance();
                    value = expanded_add(value, expanded_neg(self.term()?));
                }
                _ => return Ok(value),
            }
        }
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<Expanded, ParseError> {
        let mut value = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.advance();
            value = expanded_mul(&value, &self.factor()?);
        }
        Ok(value)
    }

    /// factor := '-' factor | atom ('^' uint)?
    fn factor(&mut self) -> Result<Expanded, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.advance();
            return Ok(expanded_neg(self.factor()?));
        }
        let mut value = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.advance();
            let position = self.position();
            match self.advance() {
                Some((_, Token::Integer(exponent))) => {
                    let exponent: u32 = match exponent.to_string().parse() {
                        Ok(exponent) => exponent,
                        Err(_) => return err(position, "exponent is too large"),
                    };
                    value = expanded_pow(&value, exponent);
                }
                _ => return err(position, "expected a nonnegative integer exponent after `^`"),
            }
        }
        Ok(value)
    }

    /// atom := integer | variable | '(' expr ')'
    fn atom(&mut self) -> Result<Expanded, ParseError> {
        let position = self.position();
        match self.advance() {
            Some((_, Token::Integer(value))) => Ok(expanded_constant(value)),
            Some((_, Token::Variable(index))) => Ok(expanded_variable(index)),
            Some((_, Token::Open)) => {
                let value = self.expr()?;
                let position = self.position();
                match self.advance() {
                    Some((_, Token::Close)) => Ok(value),
                    _ => err(position, "expected `)`"),
                }
            }
            Some((_, token)) => err(position, format!("unexpected token `{token:?}`")),
            None => err(position, "unexpected end of input"),
        }
    }
}

/// Parses a polynomial expression into canonical sparse form. The number of
/// variables is the largest index mentioned (at least 1).
pub fn parse_poly(text: &str) -> Result<SparsePoly, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return err(0, "empty input");
    }
    let mut parser = Parser { tokens, index: 0, length: text.len() };
    let expanded = parser.expr()?;
    if parser.index < parser.tokens.len() {
        let position = parser.position();
        return err(position, "unexpected trailing input");
    }
    let num_vars = expanded
        .keys()
        .flat_map(|exponents| exponents.keys().copied())
        .max()
        .unwrap_or(1)
        .max(1) as usize;
    let monomials = expanded.into_iter().map(|(exponents, coefficient)| {
        let mut dense = vec![0u32; num_vars];
        for (variable, exponent) in exponents {
            dense[variable as usize - 1] = exponent;
        }
        (dense, coefficient)
    });
    Ok(SparsePoly::new(num_vars, monomials).expect("expanded exponent vectors are dense"))
}
