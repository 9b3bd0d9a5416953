use std::fmt;

use num_rational::BigRational;

use super::ratfn::RationalFunction;
use super::{Bindings, Var};
use crate::error::{QtkError, Result};

/// Power series in the formal parameter `xi`, truncated after `xi^order`.
///
/// Coefficients are rational functions in the remaining parameters; they are
/// expected not to contain `xi` themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<RationalFunction>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![RationalFunction::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(RationalFunction::one(), order)
    }

    pub fn constant(c: RationalFunction, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_rat(k: BigRational, order: usize) -> Self {
        Self::constant(RationalFunction::one().scale_rat(&k), order)
    }

    /// `c * xi^k`, or zero when `k > order`.
    pub fn monomial(c: RationalFunction, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn xi(order: usize) -> Self {
        Self::monomial(RationalFunction::one(), 1, order)
    }

    pub fn from_coeffs(mut coeffs: Vec<RationalFunction>, order: usize) -> Self {
        coeffs.resize(order + 1, RationalFunction::zero());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RationalFunction {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Lowest `xi` power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries { coeffs: (0..=n).map(|k| self.coeffs[k].add_ref(&o.coeffs[k])).collect() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries { coeffs: (0..=n).map(|k| self.coeffs[k].sub_ref(&o.coeffs[k])).collect() }
    }

    pub fn neg_ref(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![RationalFunction::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x.scale_rat(k)).collect() }
    }

    /// Multiply by `xi^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![RationalFunction::zero(); n + 1];
        for i in 0..=n {
            if i + k <= n {
                coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        TruncSeries { coeffs }
    }

    /// Multiplicative inverse modulo `xi^(order+1)`; needs an invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(QtkError::NotInvertible("series with zero constant term".into()));
        }
        let n = self.order();
        let c0_inv = self.coeffs[0].inv()?;
        let mut out = vec![RationalFunction::zero(); n + 1];
        out[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = RationalFunction::zero();
            for j in 1..=k {
                acc = acc.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
            }
            out[k] = acc.mul_ref(&c0_inv).neg_ref();
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Antilinear conjugation: coefficients conjugated and `xi -> -xi`.
    pub fn conjugate(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let c = c.conjugate();
                    if k % 2 == 1 {
                        c.neg_ref()
                    } else {
                        c
                    }
                })
                .collect(),
        }
    }

    /// Substitution; binding `xi` collapses the series into its constant term.
    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let coeffs: Vec<RationalFunction> =
            self.coeffs.iter().map(|c| c.substitute(b)).collect::<Result<_>>()?;
        if let Some((_, v)) = b.iter().find(|(var, _)| *var == Var::Xi) {
            let x = RationalFunction::constant(v.clone());
            let mut acc = RationalFunction::zero();
            let mut p = RationalFunction::one();
            for c in &coeffs {
                acc = acc.add_ref(&c.mul_ref(&p));
                p = p.mul_ref(&x);
            }
            return Ok(Self::constant(acc, self.order()));
        }
        Ok(TruncSeries { coeffs })
    }

    /// Expand a rational function in `xi` as a truncated series.
    pub fn from_ratfn(f: &RationalFunction, order: usize) -> Result<Self> {
        let split = |p: &super::LaurentPoly| -> Result<Self> {
            let mut coeffs = vec![RationalFunction::zero(); order + 1];
            for (e, c) in p.terms() {
                let k = e[Var::Xi as usize];
                if k < 0 {
                    return Err(QtkError::NotInvertible("negative power of xi in series".into()));
                }
                let k = k as usize;
                if k > order {
                    continue;
                }
                let mut e2 = *e;
                e2[Var::Xi as usize] = 0;
                coeffs[k] = coeffs[k].add_ref(&RationalFunction::from_poly(super::LaurentPoly::monomial(c.clone(), e2)));
            }
            Ok(TruncSeries { coeffs })
        };
        let num = split(f.numer())?;
        let den = split(f.denom())?;
        Ok(num.mul_ref(&den.inv()?))
    }

    pub fn to_ratfn(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc.add_ref(&c.mul_ref(&RationalFunction::var_pow(Var::Xi, k as i32)));
        }
        acc
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfn())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let one_plus_xi = TruncSeries::one(3).add_ref(&TruncSeries::xi(3));
        let inv = one_plus_xi.inv().unwrap();
        let expect: Vec<RationalFunction> = [1, -1, 1, -1].iter().map(|&k| RationalFunction::from_int(k)).collect();
        assert_eq!(inv.coeffs(), &expect[..]);
    }

    #[test]
    fn zero_constant_term_not_invertible() {
        assert!(TruncSeries::xi(3).inv().is_err());
    }

    #[test]
    fn conjugation_of_xi_powers() {
        let xi = TruncSeries::xi(4);
        assert_eq!(xi.conjugate(), xi.neg_ref());
        let xi2 = xi.mul_ref(&xi);
        assert_eq!(xi2.conjugate(), xi2);
        // 1 + i xi is fixed: conj(i) conj(xi) = (-i)(-xi)
        let s = TruncSeries::one(4).add_ref(&xi.scale(&RationalFunction::i()));
        assert_eq!(s.conjugate(), s);
    }

    #[test]
    fn xi_evaluation_at_zero() {
        let s = TruncSeries::one(2).add_ref(&TruncSeries::xi(2));
        let b = vec![(Var::Xi, super::super::GaussRat::zero())];
        assert!(s.substitute(&b).unwrap().is_one());
    }
}
