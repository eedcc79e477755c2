//! Recursive-descent parser for the human polynomial form.
//!
//! Grammar (whitespace ignored between tokens):
//!
//! ```text
//! poly    := ["+" | "-"] term (("+" | "-") term)*
//! term    := factor ("*"? factor)*
//! factor  := rational | "i" | "(" poly ")" ["^" digits] | "z" ["^" digits]
//! rational:= digits ["/" digits]
//! ```
//!
//! Examples: `z^2 - 3z + 2`, `(1/2+i)z^3 - 2iz`, `z(z-1)`, `(z+1)^2`, `4/3`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::Poly;
use super::scalar::GaussScalar;
use crate::error::Error;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of polynomial literal", self.pos))
    }

    fn digits(&mut self) -> Result<BigInt, Error> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        Ok(txt.parse().expect("digit run"))
    }

    fn exponent(&mut self) -> Result<usize, Error> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.digits()?;
            usize::try_from(e).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Poly, Error> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let n = self.digits()?;
                let d = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.digits()?
                } else {
                    BigInt::from(1)
                };
                if d == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                Ok(Poly::constant(GaussScalar::real(BigRational::new(n, d))))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Poly::constant(GaussScalar::i()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("unclosed parenthesis"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok((0..e).fold(Poly::one(), |acc, _| &acc * &inner))
            }
            Some(b'z') => {
                self.pos += 1;
                let e = self.exponent()?;
                Ok(Poly::monomial(GaussScalar::one(), e))
            }
            _ => Err(self.err("expected a coefficient, z or a parenthesis")),
        }
    }

    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'0'..=b'9' | b'i' | b'(' | b'z') => acc = &acc * &self.factor()?,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<Poly, Error> {
        let mut acc = Poly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return Err(self.err("empty polynomial")),
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }
}

pub fn parse_poly(s: &str) -> Result<Poly, Error> {
    if !s.is_ascii() {
        return Err(Error::Parse("polynomial literal must be ASCII".into()));
    }
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let out = p.poly()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected character"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        assert_eq!(parse_poly("z^2 - 3z + 2").unwrap(), Poly::from_i64s(&[2, -3, 1]));
        assert_eq!(parse_poly("-z").unwrap(), Poly::from_i64s(&[0, -1]));
        assert_eq!(parse_poly("4/3").unwrap(), Poly::constant(GaussScalar::frac(4, 3)));
        assert_eq!(parse_poly("2*z^3 + z*z").unwrap(), Poly::from_i64s(&[0, 0, 1, 2]));
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly("z(z-1)").unwrap(), Poly::from_i64s(&[0, -1, 1]));
        assert_eq!(parse_poly("(z+1)^2 - 1").unwrap(), Poly::from_i64s(&[0, 2, 1]));
    }

    #[test]
    fn gaussian_coefficients() {
        let p = parse_poly("(1/2+i)z^3 - 2iz").unwrap();
        assert_eq!(p.coeff(3), "1/2+1i".parse().unwrap());
        assert_eq!(p.coeff(1), GaussScalar::from_parts(0, -2));
    }

    #[test]
    fn display_round_trips() {
        for s in ["z^2 - 3z + 2", "(1+2i)z - 1/2", "-z^4 + (0-1i)"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn errors() {
        for s in ["", "z^", "3 +", "(1+i", "y", "1/0", "z)", "()"] {
            assert!(parse_poly(s).is_err(), "{s:?} should fail");
        }
    }
}
