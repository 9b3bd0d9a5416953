use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{QtkError, Result};
use crate::scalars::TruncSeries;

/// Normal-ordered PBW monomial `X⁻^a H^b X⁺^c` of U(sl2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl PbwMonomial {
    pub const UNIT: PbwMonomial = PbwMonomial { a: 0, b: 0, c: 0 };

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        PbwMonomial { a, b, c }
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::UNIT
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (name, k) in [("Xm", self.a), ("H", self.b), ("Xp", self.c)] {
            match k {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

// Polynomials in H, coefficient k at index k.
type HPoly = Vec<BigInt>;

fn hpoly_mul(p: &HPoly, q: &HPoly) -> HPoly {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `(H + d)^k`
fn hpoly_shifted_power(d: i64, k: u32) -> HPoly {
    let lin = vec![BigInt::from(d), BigInt::one()];
    let mut acc = vec![BigInt::one()];
    for _ in 0..k {
        acc = hpoly_mul(&acc, &lin);
    }
    acc
}

/// `p(H + d)`
fn hpoly_shift(p: &HPoly, d: i64) -> HPoly {
    let mut out = vec![BigInt::zero(); p.len()];
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, v) in hpoly_shifted_power(d, k as u32).into_iter().enumerate() {
            out[j] += c * v;
        }
    }
    out
}

fn hpoly_add_into(acc: &mut HPoly, p: &HPoly) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (k, c) in p.iter().enumerate() {
        acc[k] += c;
    }
}

type Expansion = Arc<Vec<(PbwMonomial, BigInt)>>;

fn cache() -> &'static Mutex<HashMap<(PbwMonomial, PbwMonomial), Expansion>> {
    static CACHE: OnceLock<Mutex<HashMap<(PbwMonomial, PbwMonomial), Expansion>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Normal-ordered product of two PBW monomials, integer coefficients.
///
/// Uses `[H, X±] = ±2X±`, `[X⁺, X⁻] = H`.
pub fn mono_product(m1: PbwMonomial, m2: PbwMonomial) -> Expansion {
    if let Some(hit) = cache().lock().unwrap().get(&(m1, m2)) {
        return hit.clone();
    }
    let out = Arc::new(mono_product_uncached(m1, m2));
    cache().lock().unwrap().insert((m1, m2), out.clone());
    out
}

fn mono_product_uncached(m1: PbwMonomial, m2: PbwMonomial) -> Vec<(PbwMonomial, BigInt)> {
    // X⁺^c1 X⁻^a2 as a sum of X⁻^a p(H) X⁺^c, keyed by (a, c).
    let mut inner: BTreeMap<(u32, u32), HPoly> = BTreeMap::new();
    inner.insert((m2.a, 0), vec![BigInt::one()]);
    for _ in 0..m1.c {
        let mut next: BTreeMap<(u32, u32), HPoly> = BTreeMap::new();
        for ((a, c), p) in inner {
            // X⁺ X⁻^a = X⁻^a X⁺ + a X⁻^(a-1) (H - a + 1), and X⁺ p(H) = p(H - 2) X⁺
            hpoly_add_into(next.entry((a, c + 1)).or_default(), &hpoly_shift(&p, -2));
            if a > 0 {
                let lin = vec![BigInt::from(1 - a as i64), BigInt::one()];
                let q: HPoly = hpoly_mul(&lin, &p).into_iter().map(|x| x * BigInt::from(a)).collect();
                hpoly_add_into(next.entry((a - 1, c)).or_default(), &q);
            }
        }
        inner = next;
    }
    let mut out: BTreeMap<PbwMonomial, BigInt> = BTreeMap::new();
    for ((a, c), p) in inner {
        // H^b1 X⁻^a = X⁻^a (H - 2a)^b1 ; X⁺^c H^b2 = (H - 2c)^b2 X⁺^c
        let left = hpoly_shifted_power(-2 * a as i64, m1.b);
        let right = hpoly_shifted_power(-2 * c as i64, m2.b);
        let full = hpoly_mul(&hpoly_mul(&left, &p), &right);
        for (k, coef) in full.into_iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let m = PbwMonomial::new(a + m1.a, k as u32, c + m2.c);
            let e = out.entry(m).or_insert_with(BigInt::zero);
            *e += coef;
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, TruncSeries>, k: K, v: TruncSeries) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(x) => {
            *x = x.add_ref(&v);
            if x.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, v);
        }
    }
}

/// Element of U(sl2) with `xi`-adic series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement {
    terms: BTreeMap<PbwMonomial, TruncSeries>,
    order: usize,
}

impl UElement {
    pub fn zero(order: usize) -> Self {
        UElement { terms: BTreeMap::new(), order }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(PbwMonomial::UNIT, TruncSeries::one(order))
    }

    pub fn monomial(m: PbwMonomial, c: TruncSeries) -> Self {
        let order = c.order();
        let mut terms = BTreeMap::new();
        add_term(&mut terms, m, c);
        UElement { terms, order }
    }

    pub fn h(order: usize) -> Self {
        Self::monomial(PbwMonomial::new(0, 1, 0), TruncSeries::one(order))
    }

    pub fn xm(order: usize) -> Self {
        Self::monomial(PbwMonomial::new(1, 0, 0), TruncSeries::one(order))
    }

    pub fn xp(order: usize) -> Self {
        Self::monomial(PbwMonomial::new(0, 0, 1), TruncSeries::one(order))
    }

    pub fn from_terms<I: IntoIterator<Item = (PbwMonomial, TruncSeries)>>(order: usize, it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in it {
            add_term(&mut terms, m, c.truncate(order));
        }
        UElement { terms, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &TruncSeries)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> TruncSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| TruncSeries::zero(self.order))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(m, c)| (*m, c.truncate(order))).collect();
        for (m, c) in &o.terms {
            add_term(&mut terms, *m, c.truncate(order));
        }
        UElement { terms, order }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        UElement { terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(), order: self.order }
    }

    pub fn scale(&self, s: &TruncSeries) -> Self {
        Self::from_terms(self.order.min(s.order()), self.terms.iter().map(|(m, c)| (*m, c.mul_ref(s))))
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        Self::from_terms(self.order, self.terms.iter().map(|(m, c)| (*m, c.scale_rat(k))))
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1.mul_ref(c2);
                if c.is_zero() {
                    continue;
                }
                for (m, k) in mono_product(*m1, *m2).iter() {
                    add_term(&mut terms, *m, c.scale_rat(&rat(k)).truncate(order));
                }
            }
        }
        UElement { terms, order }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// `xi^0` part, required to be a scalar multiple of the unit for inversion.
    fn unit_constant(&self) -> Option<TruncSeries> {
        for (m, c) in &self.terms {
            if !m.is_unit() && !c.coeff(0).is_zero() {
                return None;
            }
        }
        let c0 = self.coeff(&PbwMonomial::UNIT).coeff(0).clone();
        (!c0.is_zero()).then(|| TruncSeries::constant(c0, self.order))
    }

    /// Inverse modulo `xi^(order+1)`.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self
            .unit_constant()
            .ok_or_else(|| QtkError::NotInvertible("leading xi-order term is not a unit multiple".into()))?;
        let c0_inv = c0.inv()?;
        let normed = self.scale(&c0_inv);
        let nil = Self::one(self.order).sub_ref(&normed);
        let mut acc = Self::one(self.order);
        let mut p = Self::one(self.order);
        for _ in 0..self.order {
            p = p.mul_ref(&nil);
            acc = acc.add_ref(&p);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// `exp(x)` for `x` of positive `xi`-valuation.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.values().any(|c| !c.coeff(0).is_zero()) {
            return Err(QtkError::Unsupported("exp needs an argument of positive xi-order".into()));
        }
        let mut acc = Self::one(self.order);
        let mut p = Self::one(self.order);
        for k in 1..=self.order {
            p = p.mul_ref(self).scale_rat(&BigRational::new(BigInt::one(), BigInt::from(k)));
            acc = acc.add_ref(&p);
        }
        Ok(acc)
    }

    pub fn counit(&self) -> TruncSeries {
        self.coeff(&PbwMonomial::UNIT)
    }

    /// `S(X⁻^a H^b X⁺^c) = (-1)^(a+b+c) X⁺^c H^b X⁻^a`, re-normal-ordered.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (m, c) in &self.terms {
            let sign = if m.degree() % 2 == 1 { -1 } else { 1 };
            let rev = UElement::monomial(PbwMonomial::new(0, 0, m.c), TruncSeries::one(self.order))
                .mul_ref(&UElement::monomial(PbwMonomial::new(0, m.b, 0), TruncSeries::one(self.order)))
                .mul_ref(&UElement::monomial(PbwMonomial::new(m.a, 0, 0), TruncSeries::one(self.order)));
            out = out.add_ref(&rev.scale(&c.scale_rat(&BigRational::from_integer(sign.into()))));
        }
        out
    }

    /// Classical coproduct; generators are primitive.
    pub fn coproduct(&self) -> PbwTensor {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for i in 0..=m.a {
                for j in 0..=m.b {
                    for k in 0..=m.c {
                        let coef = binomial(m.a, i) * binomial(m.b, j) * binomial(m.c, k);
                        let key = vec![PbwMonomial::new(i, j, k), PbwMonomial::new(m.a - i, m.b - j, m.c - k)];
                        add_term(&mut terms, key, c.scale_rat(&rat(&coef)));
                    }
                }
            }
        }
        PbwTensor { terms, legs: 2, order: self.order }
    }

    /// The real form θ: antilinear, fixes H and X±; acts on coefficients only.
    pub fn theta(&self) -> Self {
        UElement { terms: self.terms.iter().map(|(m, c)| (*m, c.conjugate())).collect(), order: self.order }
    }

    /// Star operation `* = S ∘ θ`.
    pub fn star(&self) -> Self {
        self.theta().antipode()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_terms(order, self.terms.iter().map(|(m, c)| (*m, c.clone())))
    }

    /// First term by PBW order, rendered.
    pub fn first_term(&self) -> Option<String> {
        self.terms.iter().next().map(|(m, c)| format!("({})*{}", c, m))
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({})*{}", c, m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of U(sl2)^{⊗legs} with series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwTensor {
    terms: BTreeMap<Vec<PbwMonomial>, TruncSeries>,
    legs: usize,
    order: usize,
}

impl PbwTensor {
    pub fn zero(legs: usize, order: usize) -> Self {
        PbwTensor { terms: BTreeMap::new(), legs, order }
    }

    pub fn one(legs: usize, order: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![PbwMonomial::UNIT; legs], TruncSeries::one(order));
        PbwTensor { terms, legs, order }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<PbwMonomial>, TruncSeries)>>(legs: usize, order: usize, it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in it {
            assert_eq!(k.len(), legs);
            add_term(&mut terms, k, c.truncate(order));
        }
        PbwTensor { terms, legs, order }
    }

    /// `x ⊗ y`
    pub fn tensor(x: &UElement, y: &UElement) -> Self {
        let order = x.order.min(y.order);
        let mut terms = BTreeMap::new();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                add_term(&mut terms, vec![*m1, *m2], c1.mul_ref(c2).truncate(order));
            }
        }
        PbwTensor { terms, legs: 2, order }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &TruncSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[PbwMonomial]) -> TruncSeries {
        self.terms.get(key).cloned().unwrap_or_else(|| TruncSeries::zero(self.order))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        assert_eq!(self.legs, o.legs);
        let order = self.order.min(o.order);
        Self::from_terms(self.legs, order, self.terms.iter().chain(o.terms.iter()).map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn neg_ref(&self) -> Self {
        PbwTensor { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg_ref())).collect(), ..*self }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        Self::from_terms(self.legs, self.order, self.terms.iter().map(|(key, c)| (key.clone(), c.scale_rat(k))))
    }

    pub fn scale(&self, s: &TruncSeries) -> Self {
        Self::from_terms(self.legs, self.order, self.terms.iter().map(|(key, c)| (key.clone(), c.mul_ref(s))))
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        assert_eq!(self.legs, o.legs);
        let order = self.order.min(o.order);
        let mut terms = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let v1 = c1.valuation().unwrap_or(order + 1);
                let v2 = c2.valuation().unwrap_or(order + 1);
                if v1 + v2 > order {
                    continue;
                }
                let c = c1.mul_ref(c2);
                // Cartesian product of the per-leg expansions.
                let mut partial: Vec<(Vec<PbwMonomial>, BigInt)> = vec![(Vec::with_capacity(self.legs), BigInt::one())];
                for leg in 0..self.legs {
                    let exp = mono_product(k1[leg], k2[leg]);
                    let mut next = Vec::with_capacity(partial.len() * exp.len());
                    for (key, coef) in &partial {
                        for (m, k) in exp.iter() {
                            let mut nk = key.clone();
                            nk.push(*m);
                            next.push((nk, coef * k));
                        }
                    }
                    partial = next;
                }
                for (key, coef) in partial {
                    add_term(&mut terms, key, c.scale_rat(&rat(&coef)).truncate(order));
                }
            }
        }
        PbwTensor { terms, legs: self.legs, order }
    }

    fn unit_key(&self) -> Vec<PbwMonomial> {
        vec![PbwMonomial::UNIT; self.legs]
    }

    /// Two-sided inverse modulo `xi^(order+1)`; the `xi^0` part must be exactly `1⊗…⊗1`.
    pub fn inv(&self) -> Result<Self> {
        let unit = self.unit_key();
        for (k, c) in &self.terms {
            let c0 = c.coeff(0);
            let ok = if *k == unit { c0.is_one() } else { c0.is_zero() };
            if !ok {
                return Err(QtkError::NotInvertible(format!("xi^0 part is not the unit (term {})", render_key(k))));
            }
        }
        if !self.terms.contains_key(&unit) {
            return Err(QtkError::NotInvertible("missing unit term".into()));
        }
        let one = Self::one(self.legs, self.order);
        let nil = one.sub_ref(self);
        let mut acc = one.clone();
        let mut p = one;
        for _ in 0..self.order {
            p = p.mul_ref(&nil);
            if p.is_zero() {
                break;
            }
            acc = acc.add_ref(&p);
        }
        Ok(acc)
    }

    /// `exp(x)` for `x` of positive `xi`-valuation.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.values().any(|c| !c.coeff(0).is_zero()) {
            return Err(QtkError::Unsupported("exp needs an argument of positive xi-order".into()));
        }
        let mut acc = Self::one(self.legs, self.order);
        let mut p = acc.clone();
        for k in 1..=self.order {
            p = p.mul_ref(self).scale_rat(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if p.is_zero() {
                break;
            }
            acc = acc.add_ref(&p);
        }
        Ok(acc)
    }

    /// Apply the classical coproduct to one leg; the result has one more leg.
    pub fn coproduct_on_leg(&self, leg: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let split = UElement::monomial(k[leg], TruncSeries::one(self.order)).coproduct();
            for (pair, coef) in &split.terms {
                let mut nk = Vec::with_capacity(self.legs + 1);
                nk.extend_from_slice(&k[..leg]);
                nk.extend_from_slice(pair);
                nk.extend_from_slice(&k[leg + 1..]);
                add_term(&mut terms, nk, c.mul_ref(coef));
            }
        }
        PbwTensor { terms, legs: self.legs + 1, order: self.order }
    }

    /// Place this tensor's legs at positions `slots` of an `n`-leg tensor, units elsewhere.
    pub fn embed(&self, n: usize, slots: &[usize]) -> Self {
        assert_eq!(slots.len(), self.legs);
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut nk = vec![PbwMonomial::UNIT; n];
                for (i, s) in slots.iter().enumerate() {
                    nk[*s] = k[i];
                }
                (nk, c.clone())
            })
            .collect();
        PbwTensor { terms, legs: n, order: self.order }
    }

    /// Permute legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (perm.iter().map(|&p| k[p]).collect(), c.clone())).collect();
        PbwTensor { terms, legs: self.legs, order: self.order }
    }

    /// Flip `τ` of a two-leg tensor.
    pub fn flip(&self) -> Self {
        self.permute(&[1, 0])
    }

    /// Apply a linear map to every leg independently.
    pub fn map_legs(&self, f: impl Fn(&UElement) -> UElement) -> Self {
        let mut out = Self::zero(self.legs, self.order);
        for (k, c) in &self.terms {
            let mut acc: Option<Vec<(Vec<PbwMonomial>, TruncSeries)>> = None;
            for m in k {
                let img = f(&UElement::monomial(*m, TruncSeries::one(self.order)));
                let pieces: Vec<(PbwMonomial, TruncSeries)> = img.terms.into_iter().collect();
                acc = Some(match acc {
                    None => pieces.into_iter().map(|(m, c)| (vec![m], c)).collect(),
                    Some(prev) => {
                        let mut next = Vec::new();
                        for (key, c1) in &prev {
                            for (m, c2) in &pieces {
                                let mut nk = key.clone();
                                nk.push(*m);
                                next.push((nk, c1.mul_ref(c2)));
                            }
                        }
                        next
                    }
                });
            }
            let pieces = acc.unwrap_or_default();
            out = out.add_ref(&Self::from_terms(self.legs, self.order, pieces.into_iter().map(|(k, v)| (k, v.mul_ref(c)))));
        }
        out
    }

    /// Antilinear map on coefficients, applied with θ on each leg (θ fixes generators).
    pub fn theta(&self) -> Self {
        PbwTensor { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conjugate())).collect(), ..*self }
    }

    /// Apply a linear map to a single leg.
    pub fn map_legs_at(&self, leg: usize, f: impl Fn(&UElement) -> UElement) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let img = f(&UElement::monomial(k[leg], TruncSeries::one(self.order)));
            for (m, v) in img.terms {
                let mut nk = k.clone();
                nk[leg] = m;
                add_term(&mut terms, nk, v.mul_ref(c).truncate(self.order));
            }
        }
        PbwTensor { terms, legs: self.legs, order: self.order }
    }

    /// `(S ⊗ … ⊗ S)`
    pub fn antipode_legs(&self) -> Self {
        self.map_legs(|x| x.antipode())
    }

    /// Apply the counit on one leg.
    pub fn counit_on_leg(&self, leg: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k[leg].is_unit())
            .map(|(k, c)| {
                let mut nk = k.clone();
                nk.remove(leg);
                (nk, c.clone())
            });
        Self::from_terms(self.legs - 1, self.order, terms.collect::<Vec<_>>())
    }

    /// Multiply the legs together in order: `a⊗b ↦ ab`.
    pub fn multiply_legs(&self) -> UElement {
        let mut out = UElement::zero(self.order);
        for (k, c) in &self.terms {
            let mut acc = UElement::monomial(k[0], c.clone());
            for m in &k[1..] {
                acc = acc.mul_ref(&UElement::monomial(*m, TruncSeries::one(self.order)));
            }
            out = out.add_ref(&acc);
        }
        out
    }

    /// Leftmost leg's element when this tensor has one leg.
    pub fn into_single(&self) -> UElement {
        assert_eq!(self.legs, 1);
        UElement::from_terms(self.order, self.terms.iter().map(|(k, c)| (k[0], c.clone())))
    }

    /// First nonzero term, rendered, or `None` for zero.
    pub fn first_term(&self) -> Option<String> {
        self.terms.iter().next().map(|(k, c)| format!("({})*{}", c, render_key(k)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_terms(self.legs, order, self.terms.iter().map(|(k, c)| (k.clone(), c.clone())))
    }
}

pub(crate) fn render_key(k: &[PbwMonomial]) -> String {
    k.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("⊗")
}

impl fmt::Display for PbwTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({})*{}", c, render_key(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const N: usize = 3;

    fn m(a: u32, b: u32, c: u32) -> UElement {
        UElement::monomial(PbwMonomial::new(a, b, c), TruncSeries::one(N))
    }

    #[test]
    fn defining_commutator() {
        let lhs = m(0, 0, 1).mul_ref(&m(1, 0, 0));
        assert_eq!(lhs, m(1, 0, 1).add_ref(&m(0, 1, 0)));
    }

    #[test]
    fn h_past_xm() {
        let lhs = m(0, 1, 0).mul_ref(&m(1, 0, 0));
        let two = BigRational::from_integer(2.into());
        assert_eq!(lhs, m(1, 1, 0).sub_ref(&m(1, 0, 0).scale_rat(&two)));
    }

    #[test]
    fn like_powers_combine() {
        assert_eq!(m(2, 0, 0).mul_ref(&m(3, 0, 0)), m(5, 0, 0));
    }

    #[test]
    fn antipode_is_anti_multiplicative_on_xm_h() {
        // S(X⁻H) = S(H)S(X⁻) = H X⁻ = X⁻H − 2X⁻
        let x = m(1, 1, 0);
        let expect = m(0, 1, 0).mul_ref(&m(1, 0, 0));
        assert_eq!(x.antipode(), expect);
    }

    #[test]
    fn coproduct_of_h_and_counit() {
        let d = UElement::h(N).coproduct();
        let expect = PbwTensor::tensor(&UElement::h(N), &UElement::one(N)).add_ref(&PbwTensor::tensor(&UElement::one(N), &UElement::h(N)));
        assert_eq!(d, expect);
        assert!(UElement::one(N).add_ref(&UElement::xm(N)).counit().is_one());
    }

    fn arb_element() -> impl Strategy<Value = UElement> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -3i64..4), 1..4).prop_map(|ts| {
            UElement::from_terms(
                2,
                ts.into_iter().map(|(a, b, c, k)| (PbwMonomial::new(a, b, c), TruncSeries::from_rat(BigRational::from_integer(k.into()), 2))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn product_is_associative(x in arb_element(), y in arb_element(), z in arb_element()) {
            prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        }

        #[test]
        fn coproduct_is_coassociative(x in arb_element()) {
            let d = x.coproduct();
            prop_assert_eq!(d.coproduct_on_leg(0), d.coproduct_on_leg(1));
        }

        #[test]
        fn coproduct_is_multiplicative(x in arb_element(), y in arb_element()) {
            prop_assert_eq!(x.mul_ref(&y).coproduct(), x.coproduct().mul_ref(&y.coproduct()));
        }

        #[test]
        fn antipode_axiom(x in arb_element()) {
            // m(S⊗id)Δ = ηε
            let d = x.coproduct();
            let mut lhs = UElement::zero(2);
            for (k, c) in d.terms() {
                let left = UElement::monomial(k[0], c.clone()).antipode();
                lhs = lhs.add_ref(&left.mul_ref(&UElement::monomial(k[1], TruncSeries::one(2))));
            }
            prop_assert_eq!(lhs, UElement::one(2).scale(&x.counit()));
        }
    }
}
