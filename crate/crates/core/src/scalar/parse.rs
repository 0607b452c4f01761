//! Recursive-descent parser for the scalar grammar.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ("^" signed-int)?
//! atom   := int | "q" | "s" | "i" | "(" expr ")"
//! ```
//!
//! Unary minus binds looser than `^`, so `-q^2` is `-(q^2)`.

use super::ScalarQ;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero at position {pos}")]
    DivByZero { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_scalar(text: &str) -> Result<ScalarQ, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ScalarQ, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarQ, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(ParseError::DivByZero { pos: at });
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarQ, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.signed_int()?;
            if e < 0 && base.is_zero() {
                return Err(ParseError::DivByZero { pos: at });
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected integer exponent"));
        }
        let v: i64 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ScalarQ, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(ScalarQ::q())
            }
            Some(b's') => {
                self.pos += 1;
                Ok(ScalarQ::s())
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(ScalarQ::i())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(ScalarQ::from_rational(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let a = parse_scalar("q^2 - q^-2").unwrap();
        assert_eq!(a, &ScalarQ::q_pow(2) - &ScalarQ::q_pow(-2));
        let b = parse_scalar("i*(q - q^-1)").unwrap();
        assert_eq!(b, &ScalarQ::i() * &(&ScalarQ::q() - &ScalarQ::q_pow(-1)));
        assert_eq!(parse_scalar("s^2").unwrap(), ScalarQ::q());
        assert_eq!(parse_scalar("3/4").unwrap(), ScalarQ::frac(3, 4));
    }

    #[test]
    fn unary_minus_precedence() {
        assert_eq!(parse_scalar("-q^2").unwrap(), -ScalarQ::q_pow(2));
        assert_eq!(parse_scalar("(-q)^2").unwrap(), ScalarQ::q_pow(2));
        assert_eq!(parse_scalar("2*-q").unwrap(), -(ScalarQ::from_int(2) * ScalarQ::q()));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_scalar("q + "), Err(ParseError::Syntax { pos: 4, msg: "unexpected end of input".into() }));
        assert!(matches!(parse_scalar("q $"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_scalar("1/(q-q)"), Err(ParseError::DivByZero { .. })));
        assert!(matches!(parse_scalar("(q"), Err(ParseError::Syntax { .. })));
    }
}
