//! Polynomial expression parser for initial data and substitutions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      division only by nonzero constants
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' digits)?
//! atom   := digits | ident | '(' expr ')'
//! ```

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::var::Var;

/// Parses `src` into an exact polynomial. Only variables in `allowed` may
/// appear.
pub fn parse_poly_expr(src: &str, allowed: &[Var]) -> Result<Poly> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        allowed,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(&format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(out)
}

/// Parses a single rational literal such as `-3/7`.
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let p = parse_poly_expr(src, &[])?;
    p.as_constant().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("`{src}` is not a constant"),
    })
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    allowed: &'a [Var],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') || self.eat('−') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') || self.eat('·') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = d.as_constant().ok_or(Error::Parse {
                    pos: at,
                    msg: "division by a non-constant".to_string(),
                })?;
                let inv = c.recip().map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".to_string(),
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') || self.eat('−') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            if matches!(self.peek(), Some('-') | Some('−')) {
                return Err(self.err("negative exponent"));
            }
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected a nonnegative integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "exponent too large".to_string(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<Poly> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let s: Scalar = d.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("bad number `{d}`"),
                })?;
                Ok(Poly::constant(s))
            }
            Some(c) if c.is_alphabetic() => {
                let mut name = String::new();
                while let Some(c) = self
                    .peek()
                    .filter(|c| c.is_alphanumeric() || *c == '\'' || *c == '′' || *c == '_')
                {
                    name.push(c);
                    self.pos += 1;
                }
                let v: Var = name.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("unknown variable `{name}`"),
                })?;
                if !self.allowed.contains(&v) {
                    return Err(Error::DisallowedVariable(name));
                }
                Ok(Poly::var(v))
            }
            Some(c) => Err(self.err(&format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::poly_to_text;
    use Var::*;

    const ZW: &[Var] = &[Z, W];

    #[test]
    fn spec_examples() {
        let p = parse_poly_expr("z^2*w + 2", ZW).unwrap();
        assert_eq!(p, &(&Poly::var(Z).pow(2) * &Poly::var(W)) + &Poly::int(2));
        assert!(parse_poly_expr("3/2*z - 3/2*z", ZW).unwrap().is_zero());
        let e = parse_poly_expr("z^-1", ZW).unwrap_err();
        assert!(matches!(e, Error::Parse { ref msg, .. } if msg.contains("negative exponent")));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly_expr("z + * w", ZW).unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly_expr("z*gamma", ZW).unwrap_err(),
            Error::DisallowedVariable(_)
        ));
        assert!(parse_poly_expr("", ZW).is_err());
        assert!(parse_poly_expr("(z + w", ZW).is_err());
        assert!(parse_poly_expr("z/w", ZW).is_err());
        assert!(parse_poly_expr("z/0", ZW).is_err());
    }

    #[test]
    fn unicode_and_nesting() {
        let p = parse_poly_expr("(z − w)^2 · γ", &[Z, W, Gamma]).unwrap();
        assert_eq!(poly_to_text(&p), "z^2*gamma - 2*z*w*gamma + w^2*gamma");
        assert_eq!(parse_scalar("-3/7").unwrap(), Scalar::new(-3, 7));
        assert!(parse_scalar("z").is_err());
    }
}
