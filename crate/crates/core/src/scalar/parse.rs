//! Text form of scalars.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := number ['/' number] [['*'] 'q' ['^' exp]]
//!         | 'q' ['^' exp]
//! exp    := ['-' | '+'] digits
//! ```
//!
//! Any expression is first read as a Laurent polynomial and then moved into
//! the requested ring; `q` outside the Laurent ring is a wrong-ring literal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Laurent, Ring, Scalar, ScalarError};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(c) if c.is_ascii_digit() => false,
            _ => return Err(self.error("expected exponent")),
        };
        let at = self.pos;
        let value: i64 = self
            .digits()?
            .try_into()
            .map_err(|_| ScalarError::Syntax {
                pos: at,
                message: "exponent out of range".into(),
            })?;
        Ok(if negative { -value } else { value })
    }

    /// Parses `q [^ exp]` after the `q` has been seen.
    fn q_power(&mut self) -> Result<i64, ScalarError> {
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(i64, BigRational), ScalarError> {
        match self.peek() {
            Some(b'q') => Ok((self.q_power()?, BigRational::one())),
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut coeff = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(ScalarError::Syntax {
                            pos: at,
                            message: "zero denominator".into(),
                        });
                    }
                    coeff /= BigRational::from_integer(den);
                }
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        if self.peek() != Some(b'q') {
                            return Err(self.error("expected `q` after `*`"));
                        }
                        Ok((self.q_power()?, coeff))
                    }
                    Some(b'q') => Ok((self.q_power()?, coeff)),
                    _ => Ok((0, coeff)),
                }
            }
            Some(_) => Err(self.error("expected a number or `q`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn expr(&mut self) -> Result<Laurent, ScalarError> {
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (e, c) = self.term()?;
            terms.push((e, c * &sign));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                Some(_) => return Err(self.error("expected `+` or `-`")),
            }
        }
        Ok(Laurent::from_terms(terms))
    }
}

/// Parses `text` as an element of `ring`.
pub fn parse_scalar(text: &str, ring: Ring) -> Result<Scalar, ScalarError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let value = cur.expr()?;
    if ring == Ring::Laurent {
        return Ok(Scalar::Laurent(value));
    }
    let constant = value.as_constant().ok_or_else(|| ScalarError::WrongRing {
        literal: text.trim().to_string(),
        ring,
    })?;
    Scalar::from_rational(ring, &constant).map_err(|_| ScalarError::WrongRing {
        literal: text.trim().to_string(),
        ring,
    })
}

/// Canonical text form; `parse_scalar(&format_scalar(a), a.ring()) == a`.
pub fn format_scalar(a: &Scalar) -> String {
    match a {
        Scalar::Int(n) => n.to_string(),
        Scalar::Rat(r) => {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        Scalar::Laurent(p) => p.to_string(),
        Scalar::Mod { value, .. } => value.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_literal() {
        let s = parse_scalar("q - q^-1", Ring::Laurent).unwrap();
        let p = s.as_laurent().unwrap();
        assert_eq!(p.coefficient(1), BigRational::one());
        assert_eq!(p.coefficient(-1), -BigRational::one());
        assert_eq!(p.terms().count(), 2);
    }

    #[test]
    fn fraction_is_reduced() {
        let s = parse_scalar("-3/6", Ring::Rationals).unwrap();
        assert_eq!(format_scalar(&s), "-1/2");
    }

    #[test]
    fn dangling_caret_is_a_syntax_error() {
        assert!(matches!(
            parse_scalar("q^", Ring::Laurent),
            Err(ScalarError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn compact_forms() {
        let a = parse_scalar("2q^2-q+1/2", Ring::Laurent).unwrap();
        let b = parse_scalar("2*q^2 - q + 1/2", Ring::Laurent).unwrap();
        assert_eq!(a, b);
        assert_eq!(format_scalar(&a), "2*q^2 - q + 1/2");
        assert_eq!(
            parse_scalar("-q^-1", Ring::Laurent).unwrap().to_string(),
            "-q^-1"
        );
    }

    #[test]
    fn wrong_ring_literals() {
        assert!(matches!(
            parse_scalar("q", Ring::Rationals),
            Err(ScalarError::WrongRing { .. })
        ));
        assert!(matches!(
            parse_scalar("1/2", Ring::Integers),
            Err(ScalarError::WrongRing { .. })
        ));
        assert!(matches!(
            parse_scalar("1/7", Ring::prime(7).unwrap()),
            Err(ScalarError::WrongRing { .. })
        ));
    }

    #[test]
    fn prime_field_fraction() {
        let gf7 = Ring::prime(7).unwrap();
        let half = parse_scalar("1/2", gf7).unwrap();
        assert_eq!(format_scalar(&half), "4");
        assert_eq!(format_scalar(&parse_scalar("-1", gf7).unwrap()), "6");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for (text, pos) in [("", 0), ("1 +", 3), ("3 * 4", 4), ("2 x", 2), ("1/0", 2)] {
            match parse_scalar(text, Ring::Laurent) {
                Err(ScalarError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
