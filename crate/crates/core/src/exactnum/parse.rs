//! Text syntax for exact reals: integers, decimals, `a/b`, `sqrt(n)`, and any
//! `+ - * /` combination with parentheses that stays inside one quadratic
//! field, e.g. `(1+sqrt(5))/2`, `1/sqrt(2)`, `2*sqrt(3)`, `0.3`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{ExactError, QuadraticSurd};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExactError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // optional exponent: e, e+, e-
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                out.push((start, Tok::Num(src[start..i].to_string())));
            }
            _ if src[i..].starts_with("sqrt") => {
                out.push((i, Tok::Sqrt));
                i += 4;
            }
            _ => {
                let tok: String = src[i..]
                    .chars()
                    .take_while(|c| c.is_alphanumeric())
                    .collect();
                let tok = if tok.is_empty() { c.to_string() } else { tok };
                return Err(ExactError::Parse {
                    token: tok,
                    input: src.to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// Decimal literal (with optional exponent) as an exact rational.
pub fn parse_decimal(s: &str) -> Result<QuadraticSurd, ExactError> {
    let bad = || ExactError::Parse {
        token: s.to_string(),
        input: s.to_string(),
    };
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let mut denom = BigInt::from(1);
    if scale >= 0 {
        numer *= BigInt::from(10).pow(scale as u32);
    } else {
        denom = BigInt::from(10).pow((-scale) as u32);
    }
    QuadraticSurd::rational(numer, denom)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err_here(&self) -> ExactError {
        let token = match self.toks.get(self.pos) {
            Some((at, _)) => {
                let rest = &self.src[*at..];
                let t: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                t
            }
            None => "<end of input>".to_string(),
        };
        ExactError::Parse {
            token,
            input: self.src.to_string(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExactError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here())
        }
    }

    fn expr(&mut self) -> Result<QuadraticSurd, ExactError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QuadraticSurd, ExactError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.try_mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = acc.try_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QuadraticSurd, ExactError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<QuadraticSurd, ExactError> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let v = parse_decimal(&s).map_err(|_| self.err_here())?;
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Some(Tok::Sqrt) => {
                let at = self.pos;
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                self.sqrt_of(&arg).map_err(|_| {
                    self.pos = at;
                    self.err_here()
                })
            }
            _ => Err(self.err_here()),
        }
    }

    /// `√(a/b) = √(ab)/b` for a non-negative rational argument.
    fn sqrt_of(&self, arg: &QuadraticSurd) -> Result<QuadraticSurd, ExactError> {
        if !arg.is_rational() || arg.p().is_negative() {
            return Err(ExactError::DivisionByZero);
        }
        let ab = (arg.p() * arg.r())
            .to_u64()
            .ok_or(ExactError::DivisionByZero)?;
        let root = QuadraticSurd::sqrt(ab);
        root.try_div(&QuadraticSurd::integer(arg.r().clone()))
    }
}

impl FromStr for QuadraticSurd {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = tokenize(s)?;
        let mut p = Parser {
            src: s,
            toks,
            pos: 0,
        };
        if p.toks.is_empty() {
            return Err(p.err_here());
        }
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err_here());
        }
        Ok(v)
    }
}

/// Parses a count such as `100`, `1e6`, `2.5e7` or `10^8` into an integer.
pub fn parse_count(s: &str) -> Result<u64, ExactError> {
    let bad = || ExactError::Parse {
        token: s.to_string(),
        input: s.to_string(),
    };
    let t = s.trim().replace('_', "");
    if let Some((b, e)) = t.split_once('^') {
        let b: u64 = b.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        return b.checked_pow(e).ok_or_else(bad);
    }
    let v = parse_decimal(&t).map_err(|_| bad())?;
    if !v.is_integer() || v.p().is_negative() {
        return Err(bad());
    }
    v.p().to_u64().ok_or_else(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QuadraticSurd {
        x.parse().unwrap()
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(s("sqrt(2)"), QuadraticSurd::sqrt(2));
        assert_eq!(s("3/2"), QuadraticSurd::rational(3, 2).unwrap());
        assert_eq!(s("1.25"), QuadraticSurd::rational(5, 4).unwrap());
        assert_eq!(s("0.3"), QuadraticSurd::rational(3, 10).unwrap());
        assert_eq!(
            s("(1+2*sqrt(5))/3"),
            QuadraticSurd::new(1.into(), 2.into(), 5, 3.into()).unwrap()
        );
        assert_eq!(s("1/sqrt(2)"), s("sqrt(2)/2"));
        assert_eq!(s("sqrt(1/2)"), s("sqrt(2)/2"));
        assert_eq!(s("1 + 1/sqrt(5)"), s("(5+sqrt(5))/5"));
        assert_eq!(s("-0.7"), QuadraticSurd::rational(-7, 10).unwrap());
    }

    #[test]
    fn errors_name_the_token() {
        let err = "sqrt(2)+foo".parse::<QuadraticSurd>().unwrap_err();
        assert!(err.to_string().contains("foo"), "{err}");
        let err = "(1+sqrt(5)/2".parse::<QuadraticSurd>().unwrap_err();
        assert!(err.to_string().contains("end of input"), "{err}");
        assert!("sqrt(2)+sqrt(3)".parse::<QuadraticSurd>().is_err());
        assert!("".parse::<QuadraticSurd>().is_err());
        assert!("sqrt(-1)".parse::<QuadraticSurd>().is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("2.5e3").unwrap(), 2500);
        assert_eq!(parse_count("10^8").unwrap(), 100_000_000);
        assert_eq!(parse_count("100").unwrap(), 100);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("abc").is_err());
    }
}
