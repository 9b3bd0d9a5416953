use num_bigint::BigInt;
use num_rational::BigRational;

use super::gauss::GaussRat;
use super::ratfn::RationalFunction;
use super::Var;
use crate::error::{QtkError, Result};

/// Parse the canonical scalar text form, e.g. `(3/2)*r^-1*s^2 + i*xi^3`.
///
/// Accepts integers, `+ - * /`, integer powers (possibly negative), parentheses,
/// the parameters `r s xi t`, the imaginary unit `i` and `q` as `s^2`.
pub fn parse_scalar(text: &str) -> Result<RationalFunction> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> QtkError {
        QtkError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add_ref(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul_ref(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div_ref(&d).map_err(|_| self.err("division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg_ref())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = self.integer()?;
            let k: i32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            let k = if neg { -k } else { k };
            return base.pow(k).map_err(|_| self.err("negative power of zero"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| self.err("integer overflow"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RationalFunction::constant(GaussRat::from_rational(BigRational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match ident {
                    "i" => Ok(RationalFunction::i()),
                    "q" => Ok(RationalFunction::var_pow(Var::S, 2)),
                    _ => Var::from_name(ident).map(RationalFunction::var).ok_or_else(|| {
                        self.pos = start;
                        self.err(&format!("unknown identifier '{ident}'"))
                    }),
                }
            }
            _ => Err(self.err("expected number, parameter or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{frac, r_pow, s_pow, xi};

    #[test]
    fn canonical_example() {
        let v = parse_scalar("(3/2)*r^-1*s^2 + i*xi^3").unwrap();
        let expect = frac(3, 2).mul_ref(&r_pow(-1)).mul_ref(&s_pow(2)).add_ref(&RationalFunction::i().mul_ref(&xi().pow(3).unwrap()));
        assert_eq!(v, expect);
        assert_eq!(v.to_string(), "(3/2)*r^-1*s^2 + i*xi^3");
    }

    #[test]
    fn q_means_s_squared() {
        assert_eq!(parse_scalar("q - q^-1").unwrap(), s_pow(2).sub_ref(&s_pow(-2)));
    }

    #[test]
    fn errors_carry_position() {
        match parse_scalar("r + w") {
            Err(QtkError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("(r").is_err());
    }
}
