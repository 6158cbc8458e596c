//! Closed-form formula grammar for potential definitions: compositions of
//! constants, the variable, powers with real exponents, `exp`, `ln`, `abs`
//! and arithmetic. Small enough to round-trip through text exactly.

use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Abs(Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, p) => a.eval(x).powf(*p),
            Expr::Exp(a) => a.eval(x).exp(),
            Expr::Ln(a) => a.eval(x).ln(),
            Expr::Abs(a) => a.eval(x).abs(),
            Expr::Neg(a) => -a.eval(x),
        }
    }

    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn add(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }

    pub fn sub(self, other: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(other))
    }

    pub fn mul(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }

    pub fn div(self, other: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(other))
    }

    pub fn pow(self, p: f64) -> Expr {
        Expr::Pow(Box::new(self), p)
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn ln(self) -> Expr {
        Expr::Ln(Box::new(self))
    }

    pub fn abs(self) -> Expr {
        Expr::Abs(Box::new(self))
    }

    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var => write!(f, "x"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, p) => write!(f, "{a}^{p:?}"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Ln(a) => write!(f, "ln({a})"),
            Expr::Abs(a) => write!(f, "abs({a})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("unexpected end of formula")]
    UnexpectedEnd,
    #[error("unexpected token `{0}` at offset {1}")]
    Unexpected(String, usize),
    #[error("bad number `{0}`")]
    BadNumber(String),
}

struct Tokens {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
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
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < bytes.len() {
                    let d = bytes[i] as char;
                    if d.is_ascii_digit() || d == '.' {
                        i += 1;
                    } else if (d == 'e' || d == 'E')
                        && i + 1 < bytes.len()
                        && ((bytes[i + 1] as char).is_ascii_digit()
                            || bytes[i + 1] == b'+'
                            || bytes[i + 1] == b'-')
                    {
                        i += 2;
                    } else {
                        break;
                    }
                }
                let s = &src[start..i];
                let v: f64 = s.parse().map_err(|_| ParseError::BadNumber(s.to_string()))?;
                out.push((start, Tok::Num(v)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            other => return Err(ParseError::Unexpected(other.to_string(), i)),
        }
    }
    Ok(out)
}

impl Tokens {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t.1)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        let (off, got) = self.toks.get(self.pos).cloned().ok_or(ParseError::UnexpectedEnd)?;
        if got == t {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Unexpected(format!("{got:?}"), off))
        }
    }
}

/// Parse a formula over one variable. `var_names` lists accepted spellings
/// of the variable (e.g. `["r"]` or `["theta"]`; `"x"` is always accepted).
pub fn parse(src: &str, var_names: &[&str]) -> Result<Expr, ParseError> {
    let mut tk = Tokens { toks: lex(src)?, pos: 0 };
    let e = parse_expr(&mut tk, var_names)?;
    if tk.pos != tk.toks.len() {
        let (off, t) = &tk.toks[tk.pos];
        return Err(ParseError::Unexpected(format!("{t:?}"), *off));
    }
    Ok(e)
}

fn parse_expr(tk: &mut Tokens, vars: &[&str]) -> Result<Expr, ParseError> {
    let mut lhs = parse_term(tk, vars)?;
    loop {
        match tk.peek() {
            Some(Tok::Plus) => {
                tk.next()?;
                lhs = lhs.add(parse_term(tk, vars)?);
            }
            Some(Tok::Minus) => {
                tk.next()?;
                lhs = lhs.sub(parse_term(tk, vars)?);
            }
            _ => return Ok(lhs),
        }
    }
}

fn parse_term(tk: &mut Tokens, vars: &[&str]) -> Result<Expr, ParseError> {
    let mut lhs = parse_unary(tk, vars)?;
    loop {
        match tk.peek() {
            Some(Tok::Star) => {
                tk.next()?;
                lhs = lhs.mul(parse_unary(tk, vars)?);
            }
            Some(Tok::Slash) => {
                tk.next()?;
                lhs = lhs.div(parse_unary(tk, vars)?);
            }
            _ => return Ok(lhs),
        }
    }
}

fn parse_unary(tk: &mut Tokens, vars: &[&str]) -> Result<Expr, ParseError> {
    if matches!(tk.peek(), Some(Tok::Minus)) {
        tk.next()?;
        return Ok(parse_unary(tk, vars)?.neg());
    }
    parse_postfix(tk, vars)
}

fn parse_postfix(tk: &mut Tokens, vars: &[&str]) -> Result<Expr, ParseError> {
    let base = parse_atom(tk, vars)?;
    if matches!(tk.peek(), Some(Tok::Caret)) {
        tk.next()?;
        let neg = if matches!(tk.peek(), Some(Tok::Minus)) {
            tk.next()?;
            true
        } else {
            false
        };
        match tk.next()? {
            Tok::Num(p) => Ok(base.pow(if neg { -p } else { p })),
            other => Err(ParseError::Unexpected(format!("{other:?}"), 0)),
        }
    } else {
        Ok(base)
    }
}

fn parse_atom(tk: &mut Tokens, vars: &[&str]) -> Result<Expr, ParseError> {
    match tk.next()? {
        Tok::Num(v) => Ok(Expr::Const(v)),
        Tok::LParen => {
            let e = parse_expr(tk, vars)?;
            tk.expect(Tok::RParen)?;
            Ok(e)
        }
        Tok::Ident(name) => match name.as_str() {
            "pi" => Ok(Expr::Const(std::f64::consts::PI)),
            "e" => Ok(Expr::Const(std::f64::consts::E)),
            "ln" | "exp" | "abs" | "lnln" => {
                tk.expect(Tok::LParen)?;
                let inner = parse_expr(tk, vars)?;
                tk.expect(Tok::RParen)?;
                Ok(match name.as_str() {
                    "ln" => inner.ln(),
                    "exp" => inner.exp(),
                    "abs" => inner.abs(),
                    _ => inner.ln().ln(),
                })
            }
            "x" => Ok(Expr::Var),
            v if vars.contains(&v) => Ok(Expr::Var),
            other => Err(ParseError::Unexpected(other.to_string(), 0)),
        },
        other => Err(ParseError::Unexpected(format!("{other:?}"), 0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let e = parse("1 / (2*pi * r^2 * ln(r)^2 * lnln(r))", &["r"]).unwrap();
        let r: f64 = 10.0;
        let expect = 1.0 / (2.0 * std::f64::consts::PI * r * r * r.ln().powi(2) * r.ln().ln());
        assert!((e.eval(r) - expect).abs() < 1e-15 * expect.abs());
    }

    #[test]
    fn roundtrip_through_display() {
        let cases = [
            "0.5 / r^2",
            "1 / ((r - 1) * (1 + ln(r - 1)^2))",
            "1 / (abs(theta) * (1 + abs(ln(abs(theta)))^3))",
            "exp(-2 * x) * (1 + x)",
            "3.04e-2 * x^1.5",
        ];
        for src in cases {
            let e = parse(src, &["r", "theta"]).unwrap();
            let printed = e.to_string();
            let back = parse(&printed, &["r", "theta"]).unwrap();
            for i in 1..40 {
                let x = 0.07 * i as f64 + 1.001;
                let (v1, v2) = (e.eval(x), back.eval(x));
                if v1.is_finite() {
                    assert!((v1 - v2).abs() <= 1e-12 * (1.0 + v1.abs()), "{src} at {x}");
                }
            }
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("1 +", &["r"]).is_err());
        assert!(parse("foo(r)", &["r"]).is_err());
        assert!(parse("r $ 2", &["r"]).is_err());
    }
}
