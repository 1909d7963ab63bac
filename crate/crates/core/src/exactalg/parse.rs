//! Text format for polynomials.
//!
//! Terms are joined by `+`/`-`; a coefficient is an integer or `num/den`;
//! variables are `X`, `Y`, `Z` for three variables and `X0..Xn` otherwise;
//! `^` raises to a natural power and `*` between factors is optional.
//! Parentheses are accepted on input. Example: `X*Y - 3/2*Z^2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::coeff::{Coeff, Rational, Rationals};
use super::poly::{Monomial, MultiPoly};
use super::PolyError;

/// Default variable names for a polynomial ring in `nvars` variables.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars == 3 {
        vec!["X".into(), "Y".into(), "Z".into()]
    } else {
        (0..nvars).map(|i| format!("X{i}")).collect()
    }
}

/// Parses with the default variable names for `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly<Rational>, PolyError> {
    let names = default_var_names(nvars);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    parse_poly_with(text, &refs)
}

/// Parses using the given variable names (matched longest first).
pub fn parse_poly_with(text: &str, names: &[&str]) -> Result<MultiPoly<Rational>, PolyError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, names };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
}

type QPoly = MultiPoly<Rational>;

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<QPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == b'(' || c.is_ascii_digit() || self.var_at().is_some() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<QPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.natural()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn var_at(&self) -> Option<(usize, usize)> {
        let rest = &self.src[self.pos..];
        let mut best: Option<(usize, usize)> = None;
        for (i, name) in self.names.iter().enumerate() {
            let nb = name.as_bytes();
            if rest.starts_with(nb) && best.map_or(true, |(_, l)| nb.len() > l) {
                best = Some((i, nb.len()));
            }
        }
        best
    }

    fn atom(&mut self) -> Result<QPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.natural()?;
                    if den == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(QPoly::constant(self.nvars(), Rationals, value))
            }
            Some(_) => match self.var_at() {
                Some((i, len)) => {
                    self.pos += len;
                    Ok(QPoly::var(self.nvars(), Rationals, i))
                }
                None => Err(self.err("expected number, variable or '('")),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }
}

/// Prints `p` using the given variable names.
pub fn format_poly<C: Coeff>(p: &MultiPoly<C>, names: &[&str]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { c.neg() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, names);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn format_monomial(m: &Monomial, names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].to_string()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&format_poly(self, &refs))
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let t = s.trim();
    let bad = || PolyError::Parse { pos: 0, msg: format!("not a rational number: {s:?}") };
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_negative() || d == BigInt::from(0) {
        return Err(bad());
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_example() {
        let p = parse_poly("X*Y - 3/2*Z^2", 3).unwrap();
        assert_eq!(p.to_string(), "X*Y - 3/2*Z^2");
    }

    #[test]
    fn implicit_multiplication_and_parens() {
        let a = parse_poly("2XY(X-Z)", 3).unwrap();
        let b = parse_poly("2*X^2*Y - 2*X*Y*Z", 3).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("-1*Y*Z+Z^2", 3).unwrap();
        assert_eq!(c.to_string(), "-Y*Z + Z^2");
    }

    #[test]
    fn indexed_names() {
        let p = parse_poly("X0^2*X3 - X1", 4).unwrap();
        assert_eq!(p.to_string(), "X0^2*X3 - X1");
        let q = parse_poly_with("T^4+3T^2+1", &["T"]).unwrap();
        assert_eq!(format_poly(&q, &["T"]), "T^4 + 3*T^2 + 1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("X +", 3).is_err());
        assert!(parse_poly("W", 3).is_err());
        assert!(parse_poly("1/0", 3).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), crate::ratio(-1, 2));
        assert_eq!(format_rational(&crate::ratio(4, 2)), "2");
        assert!(parse_rational("x").is_err());
    }
}
