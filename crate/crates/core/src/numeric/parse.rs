//! Literal syntax for surds and points of the upper half-plane.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | primary)*      juxtaposition multiplies: "2i"
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' integer)?
//! primary := decimal | 'i' | 'phi' | 'psi' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Values are complex numbers whose parts are surds of one quadratic field.
//! Positions in errors are 1-based character columns.

use num_bigint::BigInt;

use super::surd::QuadraticSurd;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(QuadraticSurd),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().collect();
            let mut frac_part = String::new();
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                frac_part = chars[fs..i].iter().collect();
            }
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(Error::parse(pos, "expected digits"));
            }
            let digits = format!("{int_part}{frac_part}");
            let numer: BigInt = digits.parse().map_err(|_| Error::parse(pos, "bad number"))?;
            let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
            out.push((pos, Tok::Num(QuadraticSurd::from_fraction(numer, denom)?)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push((pos, Tok::Ident(word)));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(Error::parse(pos, format!("unexpected character '{c}'"))),
            };
            out.push((pos, tok));
            i += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Complex {
    re: QuadraticSurd,
    im: QuadraticSurd,
}

impl Complex {
    fn real(re: QuadraticSurd) -> Self {
        Complex { re, im: QuadraticSurd::zero() }
    }

    fn add(&self, o: &Self) -> Result<Self> {
        Ok(Complex { re: self.re.checked_add(&o.re)?, im: self.im.checked_add(&o.im)? })
    }

    fn neg(&self) -> Self {
        Complex { re: -&self.re, im: -&self.im }
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        let re = self.re.checked_mul(&o.re)?.checked_sub(&self.im.checked_mul(&o.im)?)?;
        let im = self.re.checked_mul(&o.im)?.checked_add(&self.im.checked_mul(&o.re)?)?;
        Ok(Complex { re, im })
    }

    fn div(&self, o: &Self) -> Result<Self> {
        let norm = o.re.checked_mul(&o.re)?.checked_add(&o.im.checked_mul(&o.im)?)?;
        let conj = Complex { re: o.re.clone(), im: -&o.im };
        let num = self.mul(&conj)?;
        Ok(Complex { re: num.re.checked_div(&norm)?, im: num.im.checked_div(&norm)? })
    }
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

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn at(&self, position: usize, r: Result<Complex>) -> Result<Complex> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::parse(position, other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<Complex> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            let at = self.here();
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if op == '-' { rhs.neg() } else { rhs };
            acc = self.at(at, acc.add(&rhs))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Complex> {
        let mut acc = self.unary()?;
        loop {
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.at(at, acc.mul(&rhs))?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.at(at, acc.div(&rhs))?;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = self.at(at, acc.mul(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Complex> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Complex> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            let at = self.here();
            self.pos += 1;
            let exp_at = self.here();
            let exponent = match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) if n.is_integer() => n.a().clone(),
                _ => return Err(Error::parse(exp_at, "expected a non-negative integer exponent")),
            };
            self.pos += 1;
            let exponent: u32 = exponent.try_into().map_err(|_| Error::parse(exp_at, "exponent too large"))?;
            let mut acc = Complex::real(QuadraticSurd::one());
            for _ in 0..exponent {
                acc = self.at(at, acc.mul(&base))?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn expect_rparen(&mut self, open: usize) -> Result<()> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::parse(self.here(), format!("expected ')' to close '(' at {open}"))),
        }
    }

    fn primary(&mut self) -> Result<Complex> {
        let at = self.here();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Complex::real(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_rparen(at)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "i" => Ok(Complex { re: QuadraticSurd::zero(), im: QuadraticSurd::one() }),
                    "phi" => Ok(Complex::real(QuadraticSurd::phi())),
                    "psi" => Ok(Complex::real(QuadraticSurd::psi())),
                    "sqrt" => {
                        let open = self.here();
                        if self.peek() != Some(&Tok::LParen) {
                            return Err(Error::parse(open, "expected '(' after sqrt"));
                        }
                        self.pos += 1;
                        let arg_at = self.here();
                        let arg = self.expr()?;
                        self.expect_rparen(open)?;
                        let r = match (arg.im.is_zero(), arg.re.as_rational()) {
                            (true, Some(r)) => r,
                            _ => return Err(Error::parse(arg_at, "sqrt argument must be rational")),
                        };
                        // √(p/q) = √(p·q)/q
                        let root = QuadraticSurd::new(0, 1, r.denom().clone(), r.numer() * r.denom())
                            .map_err(|e| Error::parse(arg_at, e.to_string()))?;
                        Ok(Complex::real(root))
                    }
                    other => Err(Error::parse(at, format!("unknown name '{other}'"))),
                }
            }
            Some(Tok::RParen) => Err(Error::parse(at, "unexpected ')'")),
            Some(Tok::Op(op)) => Err(Error::parse(at, format!("unexpected operator '{op}'"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

fn parse(src: &str) -> Result<Complex> {
    let toks = tokenize(src)?;
    let end = src.chars().count() + 1;
    if toks.is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    let mut p = Parser { toks, pos: 0, end };
    let value = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.here(), "unexpected trailing input"));
    }
    Ok(value)
}

/// Parses a real surd literal such as `(1+sqrt(5))/2`, `sqrt(7)-1`, `phi`.
pub fn parse_surd(src: &str) -> Result<QuadraticSurd> {
    let v = parse(src)?;
    if !v.im.is_zero() {
        return Err(Error::parse(1, "expected a real number, found an imaginary part"));
    }
    Ok(v.re)
}

/// Parses a complex literal such as `phi + i/10` or `(1+i*sqrt(3))/2`,
/// returning its real and imaginary parts.
pub fn parse_complex(src: &str) -> Result<(QuadraticSurd, QuadraticSurd)> {
    let v = parse(src)?;
    Ok((v.re, v.im))
}
