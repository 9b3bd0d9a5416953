use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::gauss::GaussRat;
use super::{Bindings, Var, NVARS};
use crate::error::{QtkError, Result};

/// Exponent vector over the formal parameters, in `Var` order `(r, s, xi, t)`.
pub type Exp = [i32; NVARS];

/// Multivariate Laurent polynomial with Gaussian-rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so the canonical form is the sorted
/// list of nonzero terms. Lex order on `(r, s, xi, t)` exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, GaussRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(c, [0; NVARS])
    }

    pub fn monomial(c: GaussRat, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, k: i32) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = k;
        Self::monomial(GaussRat::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, GaussRat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && matches!(self.terms.get(&[0; NVARS]), Some(c) if c.is_one())
    }

    /// Returns the constant if this polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Exp, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, e: Exp, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.neg_ref());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(add_exp(e1, e2), c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (*e, v.mul_ref(c))).collect() }
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v.scale(k)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn shift(&self, by: &Exp) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (add_exp(e, by), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exp(&self) -> Exp {
        let mut m = [i32::MAX; NVARS];
        for e in self.terms.keys() {
            for k in 0..NVARS {
                m[k] = m[k].min(e[k]);
            }
        }
        if self.terms.is_empty() {
            [0; NVARS]
        } else {
            m
        }
    }

    /// Complex conjugation with the formal rule `xi -> -xi`; `r`, `s`, `t` are real.
    pub fn conjugate(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let c = c.conj();
                    let c = if e[Var::Xi as usize].rem_euclid(2) == 1 { c.neg_ref() } else { c };
                    (*e, c)
                })
                .collect(),
        }
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut e = *e;
            for (v, val) in b {
                let k = e[*v as usize];
                if k == 0 {
                    continue;
                }
                let factor = if k > 0 {
                    val.pow(k as u32)
                } else {
                    val.inv()
                        .map_err(|_| QtkError::Evaluation(format!("{} = 0 under negative power", v.name())))?
                        .pow((-k) as u32)
                };
                c = c.mul_ref(&factor);
                e[*v as usize] = 0;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Exact division; `None` when `d` does not divide `self` in the Laurent ring.
    pub fn try_div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.len() == 1 {
            let (e, c) = d.leading().unwrap();
            let inv = c.inv().ok()?;
            return Some(self.shift(&neg_exp(e)).scale(&inv));
        }
        // Shift both to genuine polynomials, then ordinary lex division.
        let sn = neg_exp(&self.min_exp());
        let sd = neg_exp(&d.min_exp());
        let mut rem = self.shift(&sn);
        let dd = d.shift(&sd);
        let (le, lc) = dd.leading().map(|(e, c)| (*e, c.clone()))?;
        let lc_inv = lc.inv().ok()?;
        let mut q = Self::zero();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let qe = sub_exp(&re, &le);
            if qe.iter().any(|&k| k < 0) {
                return None;
            }
            let qc = rc.mul_ref(&lc_inv);
            let t = Self::monomial(qc.clone(), qe);
            rem = rem.sub_ref(&dd.mul_ref(&t));
            q.add_term(qe, qc);
        }
        // self * x^sn = d * x^sd * q
        Some(q.shift(&sub_exp(&sd, &sn)))
    }

    pub(crate) fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = (c.is_real() || c.re.is_zero()) && c.is_negative_lead();
            let c = if neg { c.neg_ref() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_mono(e);
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", c, mono)?;
            }
        }
        Ok(())
    }
}

fn fmt_mono(e: &Exp) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let k = e[v as usize];
        match k {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

pub(crate) fn add_exp(a: &Exp, b: &Exp) -> Exp {
    let mut out = *a;
    for k in 0..NVARS {
        out[k] += b[k];
    }
    out
}

pub(crate) fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    let mut out = *a;
    for k in 0..NVARS {
        out[k] -= b[k];
    }
    out
}

pub(crate) fn neg_exp(a: &Exp) -> Exp {
    let mut out = *a;
    for k in out.iter_mut() {
        *k = -*k;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> LaurentPoly {
        LaurentPoly::var(Var::R)
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = r().add_ref(&LaurentPoly::one());
        let b = r().sub_ref(&LaurentPoly::one()).mul_ref(&LaurentPoly::var_pow(Var::S, -2));
        let prod = a.mul_ref(&b);
        assert_eq!(prod.try_div_exact(&a).unwrap(), b);
        assert_eq!(prod.try_div_exact(&b).unwrap(), a);
        let c = r().add_ref(&LaurentPoly::from_terms([([0; NVARS], GaussRat::from_int(2))]));
        assert!(prod.try_div_exact(&c).is_none());
    }

    #[test]
    fn conjugate_flips_odd_xi() {
        let xi = LaurentPoly::var(Var::Xi);
        assert_eq!(xi.conjugate(), xi.neg_ref());
        let xi2 = xi.pow(2);
        assert_eq!(xi2.conjugate(), xi2);
    }
}
