//! Expressions for rational functions over Q(i) in the variable `z`.
//!
//! Precedence, tightest first: `^`, unary `-`, `*` `/`, `+` `-`. `^` is
//! right-associative and takes an integer exponent. The imaginary unit is
//! the token `i`; juxtaposition such as `2i` is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{rational_to_string, GaussianRational, RationalFunction};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    I,
    Z,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn lower(&self) -> Result<RationalFunction> {
        Ok(match self {
            Expr::Num(q) => RationalFunction::constant(GaussianRational::real(q.clone())),
            Expr::I => RationalFunction::constant(GaussianRational::i()),
            Expr::Z => RationalFunction::z(),
            Expr::Neg(a) => -a.lower()?,
            Expr::Add(a, b) => &a.lower()? + &b.lower()?,
            Expr::Sub(a, b) => &a.lower()? - &b.lower()?,
            Expr::Mul(a, b) => &a.lower()? * &b.lower()?,
            Expr::Div(a, b) => a.lower()?.checked_div(&b.lower()?)?,
            Expr::Pow(a, e) => a.lower()?.powi(*e)?,
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(q) if !q.is_integer() || q.is_negative() => 2,
            _ => 5,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{}", rational_to_string(q).trim_end_matches("/1")),
            Expr::I => write!(f, "i"),
            Expr::Z => write!(f, "z"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 4)
            }
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                if *e < 0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' { Expr::Add(lhs.into(), rhs.into()) } else { Expr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == b'*' { Expr::Mul(lhs.into(), rhs.into()) } else { Expr::Div(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(self.unary()?.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let exp = self.unary()?;
        let value = match exp.lower().ok().and_then(|r| r.as_constant()) {
            Some(c) if c.im.is_zero() && c.re.is_integer() => c.re.to_integer(),
            _ => return self.err(at, "exponent must be an integer constant"),
        };
        match value.to_i64() {
            Some(e) if e.abs() <= 1 << 16 => Ok(Expr::Pow(base.into(), e)),
            _ => self.err(at, "exponent too large"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return self.err(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if c.is_ascii_alphabetic() {
            let mut end = start;
            while end < self.src.len() && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_') {
                end += 1;
            }
            self.pos = end;
            return match &self.src[start..end] {
                b"z" => Ok(Expr::Z),
                b"i" => Ok(Expr::I),
                _ => self.err(start, format!("unknown identifier '{}'", String::from_utf8_lossy(&self.src[start..end]))),
            };
        }
        self.err(start, format!("unexpected character '{}'", c as char))
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let mut int = String::new();
        let mut frac = String::new();
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            int.push(self.src[self.pos] as char);
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                frac.push(self.src[self.pos] as char);
                self.pos += 1;
            }
        }
        if int.is_empty() && frac.is_empty() {
            return self.err(start, "malformed number");
        }
        if self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'.') {
            return self.err(self.pos, "missing operator after number (write 2*i, not 2i)");
        }
        let digits: BigInt = format!("{int}{frac}").parse().unwrap_or_else(|_| BigInt::zero());
        let den = num_traits::pow(BigInt::from(10), frac.len());
        Ok(Expr::Num(BigRational::new(digits, den)))
    }
}

/// Parses text into an expression tree.
pub fn parse_ast(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return p.err(0, "empty expression");
    }
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected character '{}'", c as char));
    }
    Ok(e)
}

pub fn parse_expression(text: &str) -> Result<RationalFunction> {
    parse_ast(text)?.lower()
}

/// Parses a Gaussian rational constant such as `3/2`, `-1/2*i` or `(1 + i)/3`.
pub fn parse_constant(text: &str) -> Result<GaussianRational> {
    let r = parse_expression(text)?;
    r.as_constant().ok_or_else(|| Error::InvalidInput(format!("'{text}' is not a constant")))
}
