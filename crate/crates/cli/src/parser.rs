//! Expression lexer/parser for the coordinate calculus.
//!
//! Grammar (loosest-binding first):
//!   expr    := mul (('+' | '-') mul)*
//!   mul     := wedge ('*' wedge)*
//!   wedge   := unary ('^' unary)*
//!   unary   := '-' unary | power
//!   power   := atom ('**' INT)*
//!   atom    := RATIONAL | 'i' | 'x<k>' | 'dx<k>' | 'Dx<k>' | '(' expr ')'
//!
//! Wedge needs two forms or two multivectors; `*` needs a scalar operand;
//! `**` needs a scalar base and a non-negative integer exponent. A scalar
//! added to a form or multivector becomes its degree-0 component, so the
//! printer's output for mixed-degree values reparses to the same value.

use darboux::{Form, GaussRational, Monomial, MultiVec, Poly, Rational};
use num::{BigInt, One, Zero};
use std::fmt;

/// A parsed value: polynomial scalar, differential form, or multivector.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Poly),
    Form(Form),
    Vector(MultiVec),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Form(_) => "form",
            Value::Vector(_) => "multivector",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(p) => write!(f, "{}", p),
            Value::Form(w) => write!(f, "{}", w),
            Value::Vector(v) => write!(f, "{}", v),
        }
    }
}

/// Parse error with a 0-based byte position in the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.pos)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Rat(Rational),
    ImagUnit,
    Var(usize),
    FormBasis(usize),
    VecBasis(usize),
    Plus,
    Minus,
    Star,
    StarStar,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '*' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'*' {
                    toks.push((Tok::StarStar, start));
                    i += 2;
                } else {
                    toks.push((Tok::Star, start));
                    i += 1;
                }
            }
            '0'..='9' => {
                let numer = read_int(bytes, &mut i);
                let denom = if i + 1 < bytes.len()
                    && bytes[i] == b'/'
                    && bytes[i + 1].is_ascii_digit()
                {
                    i += 1;
                    let d = read_int(bytes, &mut i);
                    if d.is_zero() {
                        return err(start, "zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                toks.push((Tok::Rat(Rational::new(numer, denom)), start));
            }
            'i' => {
                // Bare imaginary unit; longer identifiers are invalid.
                if i + 1 < bytes.len() && (bytes[i + 1] as char).is_ascii_alphanumeric() {
                    return err(start, format!("unknown name starting with '{}'", c));
                }
                toks.push((Tok::ImagUnit, start));
                i += 1;
            }
            'x' => {
                i += 1;
                let k = read_index(bytes, &mut i, start)?;
                toks.push((Tok::Var(k), start));
            }
            'd' => {
                i += 1;
                if i >= bytes.len() || bytes[i] != b'x' {
                    return err(start, "expected 'dx<k>'");
                }
                i += 1;
                let k = read_index(bytes, &mut i, start)?;
                toks.push((Tok::FormBasis(k), start));
            }
            'D' => {
                i += 1;
                if i >= bytes.len() || bytes[i] != b'x' {
                    return err(start, "expected 'Dx<k>'");
                }
                i += 1;
                let k = read_index(bytes, &mut i, start)?;
                toks.push((Tok::VecBasis(k), start));
            }
            _ => return err(start, format!("unexpected character '{}'", c)),
        }
    }
    Ok(toks)
}

fn read_int(bytes: &[u8], i: &mut usize) -> BigInt {
    let start = *i;
    while *i < bytes.len() && bytes[*i].is_ascii_digit() {
        *i += 1;
    }
    std::str::from_utf8(&bytes[start..*i])
        .unwrap()
        .parse()
        .unwrap()
}

fn read_index(bytes: &[u8], i: &mut usize, start: usize) -> Result<usize, ParseError> {
    if *i >= bytes.len() || !bytes[*i].is_ascii_digit() {
        return err(start, "expected a decimal coordinate index");
    }
    let s = *i;
    while *i < bytes.len() && bytes[*i].is_ascii_digit() {
        *i += 1;
    }
    std::str::from_utf8(&bytes[s..*i])
        .unwrap()
        .parse()
        .map_err(|_| ParseError {
            pos: start,
            message: "coordinate index too large".into(),
        })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    n: usize,
    end: usize,
}

/// Parses `text` into a value on the 2n+1 coordinates x0..x2n.
pub fn parse(text: &str, n: usize) -> Result<Value, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        n,
        end: text.len(),
    };
    let v = p.expr()?;
    if let Some((_, at)) = p.peek() {
        return err(at, "unexpected trailing input");
    }
    Ok(v)
}

impl Parser {
    fn peek(&self) -> Option<(&Tok, usize)> {
        self.toks.get(self.pos).map(|(t, p)| (t, *p))
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.mul()?;
        while let Some((tok, at)) = self.peek() {
            let minus = match tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let rhs = self.mul()?;
            let rhs = if minus { neg(rhs) } else { rhs };
            acc = add(acc, rhs, self.n, at)?;
        }
        Ok(acc)
    }

    fn mul(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.wedge()?;
        while let Some((Tok::Star, at)) = self.peek() {
            self.bump();
            let rhs = self.wedge()?;
            acc = scalar_product(acc, rhs, at)?;
        }
        Ok(acc)
    }

    fn wedge(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        while let Some((Tok::Caret, at)) = self.peek() {
            self.bump();
            let rhs = self.unary()?;
            acc = match (acc, rhs) {
                (Value::Form(a), Value::Form(b)) => Value::Form(a.wedge(&b)),
                (Value::Vector(a), Value::Vector(b)) => Value::Vector(a.wedge(&b)),
                (a, b) => {
                    return err(
                        at,
                        format!(
                            "'^' needs two forms or two multivectors, got {} ^ {}",
                            a.kind(),
                            b.kind()
                        ),
                    )
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.bump();
            return Ok(neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        let mut acc = base;
        while let Some((Tok::StarStar, at)) = self.peek() {
            self.bump();
            let (tok, tat) = match self.bump() {
                Some(t) => t,
                None => return err(self.end, "expected an integer exponent"),
            };
            let exp = match tok {
                Tok::Rat(r) if r.is_integer() => match u32::try_from(r.to_integer()) {
                    Ok(e) => e,
                    Err(_) => return err(tat, "exponent too large"),
                },
                _ => return err(tat, "'**' needs a non-negative integer exponent"),
            };
            acc = match acc {
                Value::Scalar(p) => Value::Scalar(p.pow(exp)),
                other => {
                    return err(at, format!("'**' needs a scalar base, got {}", other.kind()))
                }
            };
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let (tok, at) = match self.bump() {
            Some(t) => t,
            None => return err(self.end, "expected an expression"),
        };
        match tok {
            Tok::Rat(r) => Ok(Value::Scalar(constant(
                self.n,
                GaussRational::from_rational(r),
            ))),
            Tok::ImagUnit => Ok(Value::Scalar(constant(
                self.n,
                GaussRational::new(Rational::zero(), Rational::one()),
            ))),
            Tok::Var(k) => {
                self.check_index(k, at)?;
                Ok(Value::Scalar(Poly::var(self.n, k)))
            }
            Tok::FormBasis(k) => {
                self.check_index(k, at)?;
                Ok(Value::Form(Form::basis(self.n, &[k as u8])))
            }
            Tok::VecBasis(k) => {
                self.check_index(k, at)?;
                Ok(Value::Vector(MultiVec::basis(self.n, &[k as u8])))
            }
            Tok::LParen => {
                let v = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(v),
                    Some((_, p)) => err(p, "expected ')'"),
                    None => err(self.end, "expected ')'"),
                }
            }
            _ => err(at, "expected an expression"),
        }
    }

    fn check_index(&self, k: usize, at: usize) -> Result<(), ParseError> {
        if k > 2 * self.n {
            return err(
                at,
                format!("coordinate index {} out of range for n = {}", k, self.n),
            );
        }
        Ok(())
    }
}

fn constant(n: usize, c: GaussRational) -> Poly {
    let mut p = Poly::zero(n);
    p.add_term(Monomial(vec![0; 2 * n + 1]), c);
    p
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(-&p),
        Value::Form(w) => Value::Form(w.neg()),
        Value::Vector(w) => Value::Vector(w.neg()),
    }
}

fn add(a: Value, b: Value, n: usize, at: usize) -> Result<Value, ParseError> {
    let _ = n;
    match (a, b) {
        (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(&p + &q)),
        (Value::Form(v), Value::Form(w)) => Ok(Value::Form(v.add(&w))),
        (Value::Vector(v), Value::Vector(w)) => Ok(Value::Vector(v.add(&w))),
        // A scalar summand is the degree-0 component.
        (Value::Scalar(p), Value::Form(w)) | (Value::Form(w), Value::Scalar(p)) => {
            Ok(Value::Form(w.add(&Form::scalar(p))))
        }
        (Value::Scalar(p), Value::Vector(w)) | (Value::Vector(w), Value::Scalar(p)) => {
            Ok(Value::Vector(w.add(&MultiVec::scalar(p))))
        }
        (a, b) => err(
            at,
            format!("cannot add {} and {}", a.kind(), b.kind()),
        ),
    }
}

fn scalar_product(a: Value, b: Value, at: usize) -> Result<Value, ParseError> {
    match (a, b) {
        (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(&p * &q)),
        (Value::Scalar(p), Value::Form(w)) | (Value::Form(w), Value::Scalar(p)) => {
            Ok(Value::Form(w.poly_mul(&p)))
        }
        (Value::Scalar(p), Value::Vector(w)) | (Value::Vector(w), Value::Scalar(p)) => {
            Ok(Value::Vector(w.poly_mul(&p)))
        }
        (a, b) => err(
            at,
            format!(
                "'*' needs a scalar operand, got {} * {} (use '^' to wedge)",
                a.kind(),
                b.kind()
            ),
        ),
    }
}
