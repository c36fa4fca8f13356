//! Expression front end for polynomials and one-forms.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'i' | variable | 'd' variable | '(' expr ')'
//! ```
//!
//! `i` is the imaginary unit unless it is declared as a variable. Division
//! is only by nonzero constants, and there is no implicit multiplication.

use std::fmt;

use folia_core::exactalg::{Poly, Scalar};
use folia_core::extcalc::Form;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at offset {offset}: {message}")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    /// The same error relative to an enclosing string.
    pub fn shifted(mut self, by: usize) -> Self {
        self.offset += by;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), offset: start });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                offset: start,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), offset: i });
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(ParseError::new(i, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    Poly(Poly),
    Form(Form),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Form(_) => "one-form",
        }
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Op(c), .. }) if *c == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn dim(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let at = self.offset();
            let negate = if self.eat_op('+') {
                false
            } else if self.eat_op('-') {
                true
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            let rhs = if negate { neg(rhs) } else { rhs };
            acc = add(acc, rhs, at)?;
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.offset();
            if self.eat_op('*') {
                let rhs = self.unary()?;
                acc = mul(acc, rhs, at)?;
            } else if self.eat_op('/') {
                let rhs = self.unary()?;
                acc = div(acc, rhs, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat_op('-') {
            return Ok(neg(self.unary()?));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        let at = self.offset();
        if !self.eat_op('^') {
            return Ok(base);
        }
        let exp_at = self.offset();
        let exp = match self.peek() {
            Some(Token { tok: Tok::Int(n), .. }) => n.clone(),
            _ => return Err(ParseError::new(exp_at, "expected a non-negative integer exponent")),
        };
        self.pos += 1;
        let exp: u32 = exp
            .try_into()
            .map_err(|_| ParseError::new(exp_at, "exponent is too large"))?;
        match base {
            Value::Poly(p) => Ok(Value::Poly(p.pow(exp))),
            Value::Form(_) => Err(ParseError::new(at, "a one-form cannot be raised to a power")),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let at = self.offset();
        let Some(token) = self.peek().cloned() else {
            return Err(ParseError::new(at, "unexpected end of input"));
        };
        self.pos += 1;
        match token.tok {
            Tok::Int(n) => Ok(Value::Poly(Poly::constant(self.dim(), Scalar::from_bigint(n)))),
            Tok::Ident(name) => self.identifier(&name, at),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(ParseError::new(self.offset(), "expected ')'"));
                }
                Ok(inner)
            }
            Tok::Op(c) => Err(ParseError::new(at, format!("unexpected '{c}'"))),
        }
    }

    fn identifier(&self, name: &str, at: usize) -> Result<Value, ParseError> {
        let n = self.dim();
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(Value::Poly(Poly::var(n, i)));
        }
        if name == "i" {
            return Ok(Value::Poly(Poly::constant(n, Scalar::i())));
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Some(i) = self.vars.iter().position(|v| v == rest) {
                return Ok(Value::Form(Form::dx(n, i)));
            }
        }
        Err(ParseError::new(at, format!("undeclared variable '{name}'")))
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Poly(p) => Value::Poly(-&p),
        Value::Form(f) => Value::Form(-&f),
    }
}

fn add(a: Value, b: Value, at: usize) -> Result<Value, ParseError> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p + &q)),
        (Value::Form(f), Value::Form(g)) => Ok(Value::Form(&f + &g)),
        (Value::Form(f), Value::Poly(p)) | (Value::Poly(p), Value::Form(f)) if p.is_zero() => Ok(Value::Form(f)),
        (a, b) => Err(ParseError::new(
            at,
            format!("cannot add a {} and a {}", a.kind(), b.kind()),
        )),
    }
}

fn mul(a: Value, b: Value, at: usize) -> Result<Value, ParseError> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p * &q)),
        (Value::Poly(p), Value::Form(f)) | (Value::Form(f), Value::Poly(p)) => Ok(Value::Form(f.mul_poly(&p))),
        (Value::Form(_), Value::Form(_)) => Err(ParseError::new(
            at,
            "product of two differentials: only one-forms are accepted",
        )),
    }
}

fn div(a: Value, b: Value, at: usize) -> Result<Value, ParseError> {
    let divisor = match b {
        Value::Poly(q) => q
            .as_constant()
            .ok_or_else(|| ParseError::new(at, "division by a non-constant polynomial"))?,
        Value::Form(_) => return Err(ParseError::new(at, "division by a one-form")),
    };
    let inv = divisor
        .inv()
        .ok_or_else(|| ParseError::new(at, "division by zero"))?;
    Ok(match a {
        Value::Poly(p) => Value::Poly(p.scale(&inv)),
        Value::Form(f) => Value::Form(f.scale(&inv)),
    })
}

fn parse_value(text: &str, vars: &[String]) -> Result<Value, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        vars,
        end: text.len(),
    };
    let v = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(ParseError::new(parser.offset(), "unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_poly(text: &str, vars: &[String]) -> Result<Poly, ParseError> {
    match parse_value(text, vars)? {
        Value::Poly(p) => Ok(p),
        Value::Form(_) => Err(ParseError::new(0, "expected a polynomial, found a one-form")),
    }
}

pub fn parse_form(text: &str, vars: &[String]) -> Result<Form, ParseError> {
    match parse_value(text, vars)? {
        Value::Form(f) => Ok(f),
        Value::Poly(p) if p.is_zero() => Ok(Form::zero(vars.len(), 1)),
        Value::Poly(_) => Err(ParseError::new(0, "expected a one-form, found a polynomial")),
    }
}

/// A constant expression such as `-3/2` or `1+2*i`.
pub fn parse_scalar(text: &str, vars: &[String]) -> Result<Scalar, ParseError> {
    parse_poly(text, vars)?
        .as_constant()
        .ok_or_else(|| ParseError::new(0, "expected a constant"))
}

/// Comma-separated variable names, e.g. `x,y,z`.
pub fn parse_vars(text: &str) -> Result<Vec<String>, ParseError> {
    let mut vars = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let name = part.trim();
        let at = offset + part.find(name).unwrap_or(0);
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(ParseError::new(at, format!("invalid variable name '{name}'")));
        }
        if vars.iter().any(|v| v == name) {
            return Err(ParseError::new(at, format!("variable '{name}' declared twice")));
        }
        vars.push(name.to_string());
        offset += part.len() + 1;
    }
    Ok(vars)
}

/// Display helper pairing a value with variable names.
pub struct Rendered<'a, T>(pub &'a T, pub &'a [String]);

impl fmt::Display for Rendered<'_, Poly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(self.1))
    }
}

impl fmt::Display for Rendered<'_, Form> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(self.1))
    }
}
