//! Expression syntax: integers, `x`, `y`, `p`, `dx`, `dy`, `+ - * / ^`,
//! parentheses, and juxtaposition as multiplication (so `(x + 1) dx` reads
//! as a product). Output of the `Display` impls parses back to the same value.

use std::fmt;

use num_bigint::BigInt;

use super::forms::Form1;
use super::mpoly::Var;
use super::ppoly::PPoly;
use super::ratfunc::RatFunc;
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl std::error::Error for ExprError {}

/// `scalar + cx dx + cy dy` with polynomial-in-`p` parts; products of two
/// differentials are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expr {
    pub scalar: PPoly,
    pub cx: PPoly,
    pub cy: PPoly,
}

impl Expr {
    fn scalar(s: PPoly) -> Self {
        Expr {
            scalar: s,
            ..Default::default()
        }
    }

    fn is_scalar(&self) -> bool {
        self.cx.is_zero() && self.cy.is_zero()
    }

    fn add(&self, o: &Expr) -> Expr {
        Expr {
            scalar: &self.scalar + &o.scalar,
            cx: &self.cx + &o.cx,
            cy: &self.cy + &o.cy,
        }
    }

    fn neg(&self) -> Expr {
        Expr {
            scalar: -&self.scalar,
            cx: -&self.cx,
            cy: -&self.cy,
        }
    }

    fn mul(&self, s: &PPoly) -> Expr {
        Expr {
            scalar: &self.scalar * s,
            cx: &self.cx * s,
            cy: &self.cy * s,
        }
    }

    fn div(&self, s: &RatFunc) -> Expr {
        Expr {
            scalar: self.scalar.scale(s),
            cx: self.cx.scale(s),
            cy: self.cy.scale(s),
        }
    }

    pub fn uses_p(&self) -> bool {
        [&self.scalar, &self.cx, &self.cy].iter().any(|f| f.degree().map_or(false, |k| k > 0))
    }
}

fn p_free(f: &PPoly) -> Option<RatFunc> {
    match f.degree() {
        None => Some(RatFunc::zero()),
        Some(0) => Some(f.coeff(0)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            let ch = s[i..].chars().next().expect("char boundary");
            return Err(ExprError {
                offset: i,
                message: format!("unexpected character '{}'", ch),
            });
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

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.offset();
            if self.eat('*') || self.starts_primary() {
                let rhs = self.unary()?;
                acc = match (acc.is_scalar(), rhs.is_scalar()) {
                    (_, true) => acc.mul(&rhs.scalar),
                    (true, false) => rhs.mul(&acc.scalar),
                    (false, false) => {
                        return Err(ExprError {
                            offset: at,
                            message: "product of two differentials".into(),
                        })
                    }
                };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                if !rhs.is_scalar() {
                    return Err(ExprError {
                        offset: at,
                        message: "division by a differential".into(),
                    });
                }
                let den = p_free(&rhs.scalar).ok_or_else(|| ExprError {
                    offset: at,
                    message: "division by an expression in p".into(),
                })?;
                let inv = den.recip().map_err(|_| ExprError {
                    offset: at,
                    message: "division by zero".into(),
                })?;
                acc = acc.div(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn exponent(&mut self) -> Result<i64, ExprError> {
        let paren = self.eat('(');
        let neg = paren && self.eat('-');
        let e = match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                i64::try_from(n).or_else(|_| self.err("exponent too large"))?
            }
            _ => return self.err("expected an integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.err("expected ')'");
        }
        Ok(if neg { -e } else { e })
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        let e = self.exponent()?;
        if !base.is_scalar() {
            return Err(ExprError {
                offset: at,
                message: "power of a differential".into(),
            });
        }
        if e < 0 {
            let b = p_free(&base.scalar)
                .and_then(|b| b.recip().ok())
                .ok_or_else(|| ExprError {
                    offset: at,
                    message: "negative power of zero or of an expression in p".into(),
                })?;
            let e = u32::try_from(e.unsigned_abs()).map_err(|_| ExprError {
                offset: at,
                message: "exponent too large".into(),
            })?;
            return Ok(Expr::scalar(PPoly::constant(b.pow(e))));
        }
        if e > 4096 {
            return Err(ExprError {
                offset: at,
                message: "exponent too large".into(),
            });
        }
        let mut acc = PPoly::constant(RatFunc::one());
        for _ in 0..e {
            acc = &acc * &base.scalar;
        }
        Ok(Expr::scalar(acc))
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::scalar(PPoly::constant(RatFunc::constant(Rational::from_integer(n)))))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "x" => Ok(Expr::scalar(PPoly::constant(RatFunc::var(Var::X)))),
                    "y" => Ok(Expr::scalar(PPoly::constant(RatFunc::var(Var::Y)))),
                    "p" => Ok(Expr::scalar(PPoly::p())),
                    "dx" => Ok(Expr {
                        cx: PPoly::constant(RatFunc::one()),
                        ..Default::default()
                    }),
                    "dy" => Ok(Expr {
                        cy: PPoly::constant(RatFunc::one()),
                        ..Default::default()
                    }),
                    _ => Err(ExprError {
                        offset: at,
                        message: format!("unknown variable '{}'", id),
                    }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{}'", c)),
            None => self.err("unexpected end of expression"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ExprError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn whole(s: &str) -> ExprError {
    ExprError {
        offset: 0,
        message: s.into(),
    }
}

/// A polynomial in `p` with coefficients rational in `x`, `y`.
pub fn parse_ppoly(s: &str) -> Result<PPoly, ExprError> {
    let e = parse_expr(s)?;
    if !e.is_scalar() {
        return Err(whole("unexpected differential"));
    }
    Ok(e.scalar)
}

/// A rational function of `x`, `y`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc, ExprError> {
    let e = parse_ppoly(s)?;
    p_free(&e).ok_or_else(|| whole("variable p is not allowed here"))
}

/// A 1-form `a dx + b dy` (the zero form may be written `0`).
pub fn parse_form1(s: &str) -> Result<Form1, ExprError> {
    let e = parse_expr(s)?;
    if !e.scalar.is_zero() {
        return Err(whole("1-form has a term without dx or dy"));
    }
    match (p_free(&e.cx), p_free(&e.cy)) {
        (Some(cx), Some(cy)) => Ok(Form1::new(cx, cy)),
        _ => Err(whole("variable p is not allowed here")),
    }
}
