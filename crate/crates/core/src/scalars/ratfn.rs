use std::fmt;

use num_rational::BigRational;

use super::gauss::GaussRat;
use super::laurent::{neg_exp, LaurentPoly};
use super::{Bindings, Var};
use crate::error::{QtkError, Result};

/// Element of the fraction field of [`LaurentPoly`].
///
/// Normal form: a monomial denominator is folded into the numerator; an
/// exactly dividing denominator is divided out; otherwise the denominator is
/// shifted to have zero minimal exponents and made monic in lex order.
/// No polynomial gcd is taken, so equality goes through cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalFunction { num, den: LaurentPoly::one() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::constant(GaussRat::from_frac(n, d))
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    pub fn var_pow(v: Var, k: i32) -> Self {
        Self::from_poly(LaurentPoly::var_pow(v, k))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(QtkError::NotInvertible("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RationalFunction { num, den };
        }
        if let Some(q) = num.try_div_exact(&den) {
            return RationalFunction { num: q, den: LaurentPoly::one() };
        }
        let shift = neg_exp(&den.min_exp());
        let den = den.shift(&shift);
        let num = num.shift(&shift);
        let lc_inv = den.leading().map(|(_, c)| c.inv().expect("nonzero leading coefficient")).unwrap();
        RationalFunction { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction { num: self.num.add_ref(&o.num), den: LaurentPoly::one() };
        }
        if self.den == o.den {
            return Self::normalized(self.num.add_ref(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den)),
            self.den.mul_ref(&o.den),
        )
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        RationalFunction { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction { num: self.num.mul_ref(&o.num), den: LaurentPoly::one() };
        }
        Self::normalized(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let num = self.num.scale_rat(k);
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let num = self.num.scale(c);
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QtkError::NotInvertible("zero rational function".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    pub fn conjugate(&self) -> Self {
        Self::normalized(self.num.conjugate(), self.den.conjugate())
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let num = self.num.substitute(b)?;
        let den = self.den.substitute(b)?;
        if den.is_zero() {
            return Err(QtkError::Evaluation("denominator vanishes under substitution".into()));
        }
        Ok(Self::normalized(num, den))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul_ref(&o.den) == o.num.mul_ref(&self.den)
    }
}

impl Eq for RationalFunction {}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RationalFunction {
        RationalFunction::var_pow(Var::S, 2)
    }

    #[test]
    fn unit_cancellation() {
        let r = RationalFunction::var(Var::R);
        assert!(r.mul_ref(&r.inv().unwrap()).is_one());
    }

    #[test]
    fn q_difference_quotient_by_cross_multiplication() {
        // (1 - q^-2) / (q - q^-1): cross-multiply the result back.
        let one = RationalFunction::one();
        let qi = q().inv().unwrap();
        let num = one.sub_ref(&qi.mul_ref(&qi));
        let den = q().sub_ref(&qi);
        let x = num.div_ref(&den).unwrap();
        assert_eq!(x.mul_ref(&den), num);
        // the quotient is q^-1, since q - q^-1 = q (1 - q^-2)
        assert_eq!(x, qi);
        assert!(x.is_polynomial());
    }

    #[test]
    fn non_monomial_denominator_is_monic() {
        let x = RationalFunction::one().div_ref(&q().add_ref(&RationalFunction::from_int(2))).unwrap();
        assert!(!x.is_polynomial());
        let (_, lc) = x.denom().leading().unwrap();
        assert!(lc.is_one());
        assert_eq!(x.denom().min_exp(), [0; 4]);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
        let r = RationalFunction::var(Var::R);
        let y = RationalFunction::one().div_ref(&r.sub_ref(&RationalFunction::one())).unwrap();
        let b: Bindings = vec![(Var::R, GaussRat::one())];
        assert!(matches!(y.substitute(&b), Err(QtkError::Evaluation(_))));
    }
}
