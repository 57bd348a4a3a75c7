//! Text syntax for polynomials and ground elements.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' uint)?
//! atom  := uint | 'x' | 't' | '(' expr ')'
//! ```
//!
//! Multiplication must be written out (`2*x`, not `2x`). Division is only
//! allowed by a nonzero constant, and `t` only over a rational function field.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ground::{Field, GroundElement, GroundFieldConfig};
use crate::poly::Poly;

/// Parses a polynomial in `x` over the field of `cfg`.
pub fn parse_poly(cfg: &GroundFieldConfig, text: &str) -> Result<Poly> {
    Parser::new(cfg.field(), text).parse_all()
}

/// Parses a constant; `x` may appear but the result must have degree ≤ 0.
pub fn parse_element(cfg: &GroundFieldConfig, text: &str) -> Result<GroundElement> {
    let p = parse_poly(cfg, text)?;
    match p.degree() {
        None => Ok(cfg.field().zero()),
        Some(0) => Ok(p.coeffs()[0].clone()),
        Some(_) => Err(Error::InvalidElement(format!("{text:?} is not a constant"))),
    }
}

struct Parser<'a> {
    field: Field,
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(field: Field, text: &'a str) -> Self {
        Parser { field, chars: text.chars().collect(), pos: 0, text }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let mut line = 1;
        let mut column = 1;
        for c in self.text.chars().take(pos) {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Poly> {
        if self.peek().is_none() {
            return Err(self.error_at(self.pos, "empty input"));
        }
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected character {c:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(self.error_at(at, "division by a non-constant polynomial"));
                    }
                    let inv =
                        d.lc().and_then(GroundElement::inv).ok_or_else(|| self.error_at(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    return Err(self.error_at(self.pos, "implicit multiplication is not allowed; write '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let n = self.uint()?;
            let n: u32 =
                n.try_into().ok().filter(|&n| n <= 4096).ok_or_else(|| self.error_at(at, "exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected a non-negative integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Poly::constant(self.field.from_bigint(&n)))
            }
            Some('x') => {
                self.pos += 1;
                self.ident_end(at)?;
                Ok(Poly::x(self.field))
            }
            Some('t') => {
                self.pos += 1;
                self.ident_end(at)?;
                match self.field.t() {
                    Some(t) => Ok(Poly::constant(t)),
                    None => Err(self.error_at(at, "'t' is only available over k(t)")),
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error_at(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error_at(self.pos, format!("unexpected character {c:?}"))),
            None => Err(self.error_at(self.pos, "unexpected end of input")),
        }
    }

    fn ident_end(&self, at: usize) -> Result<()> {
        if self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            return Err(self.error_at(at, "unknown identifier; only 'x' and 't' are reserved"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::CoefficientField;

    #[test]
    fn parses_rational_function_coefficients() {
        let cfg = GroundFieldConfig::tadic_rationals();
        let p = parse_poly(&cfg, "x^2 + t^3/(1 + t)*x - 1/2").unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "-1/2 + ((t^3)/(1 + t))*x + x^2");
        assert_eq!(parse_poly(&cfg, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        let q = GroundFieldConfig::padic(2).unwrap();
        let err = parse_poly(&q, "x + t").unwrap_err();
        assert_eq!(err, Error::Parse { line: 1, column: 5, message: "'t' is only available over k(t)".into() });
        assert!(matches!(parse_poly(&q, "2x"), Err(Error::Parse { column: 2, .. })));
        assert!(matches!(parse_poly(&q, "x/x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&q, "x/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&q, "(x + 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&q, "y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&q, "x +\n  $"), Err(Error::Parse { line: 2, column: 3, .. })));
        assert!(matches!(parse_poly(&q, ""), Err(Error::Parse { .. })));
    }

    #[test]
    fn prime_field_coefficients_reduce() {
        let cfg = GroundFieldConfig::tadic(CoefficientField::PrimeField(2)).unwrap();
        let p = parse_poly(&cfg, "(x + t)^2").unwrap();
        assert_eq!(p, parse_poly(&cfg, "x^2 + t^2").unwrap());
        assert!(parse_poly(&cfg, "x/2").is_err());
    }

    #[test]
    fn elements() {
        let cfg = GroundFieldConfig::padic(3).unwrap();
        assert_eq!(parse_element(&cfg, "-6/4").unwrap().to_string(), "-3/2");
        assert!(parse_element(&cfg, "x").is_err());
    }
}
