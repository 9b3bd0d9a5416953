use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{QtkError, Result};
use crate::scalars::{r_pow, Bindings, Scalar};

/// Weight pair `(h₁, h₂)` under the two Cartan generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Bigrade(pub i32, pub i32);

impl Bigrade {
    pub fn add(self, o: Bigrade) -> Bigrade {
        Bigrade(self.0 + o.0, self.1 + o.1)
    }

    pub fn neg(self) -> Bigrade {
        Bigrade(-self.0, -self.1)
    }

    pub fn scale(self, k: i32) -> Bigrade {
        Bigrade(self.0 * k, self.1 * k)
    }
}

/// `h(z^μ)` for `μ = 1..4`; momenta and derivatives carry the negatives.
pub const Z_BIGRADES: [Bigrade; 4] = [Bigrade(1, 1), Bigrade(-1, 1), Bigrade(-1, -1), Bigrade(1, -1)];

pub fn z_bigrade(mu: usize) -> Bigrade {
    Z_BIGRADES[mu - 1]
}

pub fn p_bigrade(mu: usize) -> Bigrade {
    Z_BIGRADES[mu - 1].neg()
}

/// Which twisting element defines the star product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gauge {
    /// `r^(−H₂⊗H₁)`: factor `r^(−h₂(f)h₁(g))`.
    #[default]
    Paper,
    /// `exp(α H₁⊗H₂ + β H₂⊗H₁)` with `α = −β = ½ ln r`.
    SymmetricFootnote,
}

impl Gauge {
    pub fn name(self) -> &'static str {
        match self {
            Gauge::Paper => "paper",
            Gauge::SymmetricFootnote => "symmetric-footnote",
        }
    }

    pub fn from_name(s: &str) -> Option<Gauge> {
        match s {
            "paper" => Some(Gauge::Paper),
            "symmetric-footnote" => Some(Gauge::SymmetricFootnote),
            _ => None,
        }
    }

    /// Exponent of `r` in `f * g` for homogeneous `f`, `g`.
    pub fn exponent(self, f: Bigrade, g: Bigrade) -> Result<i32> {
        match self {
            Gauge::Paper => Ok(-f.1 * g.0),
            Gauge::SymmetricFootnote => {
                let twice = f.0 * g.1 - f.1 * g.0;
                if twice % 2 != 0 {
                    return Err(QtkError::Unsupported(format!("half-integer power of r between bigrades {f:?} and {g:?}")));
                }
                Ok(twice / 2)
            }
        }
    }

    pub fn factor(self, f: Bigrade, g: Bigrade) -> Result<Scalar> {
        Ok(r_pow(self.exponent(f, g)?))
    }
}

/// Normal-ordered monomial `z^α p^β q^γ ∂^δ m^k`.
///
/// `q` is a second, independent copy of the momenta.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub z: [u16; 4],
    pub p: [u16; 4],
    pub q: [u16; 4],
    pub d: [u16; 4],
    pub m: u16,
}

impl Mono {
    pub const ONE: Mono = Mono { z: [0; 4], p: [0; 4], q: [0; 4], d: [0; 4], m: 0 };

    pub fn bigrade(&self) -> Bigrade {
        let mut g = Bigrade(0, 0);
        for mu in 0..4 {
            let w = Z_BIGRADES[mu];
            let net = self.z[mu] as i32 - self.p[mu] as i32 - self.q[mu] as i32 - self.d[mu] as i32;
            g = g.add(w.scale(net));
        }
        g
    }

    pub fn z_degree(&self) -> u32 {
        self.z.iter().map(|&k| k as u32).sum()
    }

    pub fn d_degree(&self) -> u32 {
        self.d.iter().map(|&k| k as u32).sum()
    }

    pub fn has_derivative(&self) -> bool {
        self.d.iter().any(|&k| k > 0)
    }

    fn commuting_mul(&self, o: &Mono) -> Mono {
        let add = |a: [u16; 4], b: [u16; 4]| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
        Mono { z: add(self.z, o.z), p: add(self.p, o.p), q: add(self.q, o.q), d: add(self.d, o.d), m: self.m + o.m }
    }

    /// Generator sequence in the fixed order `z¹…z⁴ p₁…p₄ q₁…q₄ ∂₁…∂₄ m`.
    pub fn generators(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        for (mu, k) in self.z.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::Z(mu + 1), *k as usize));
        }
        for (mu, k) in self.p.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::P(mu + 1), *k as usize));
        }
        for (mu, k) in self.q.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::Q(mu + 1), *k as usize));
        }
        for (mu, k) in self.d.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::D(mu + 1), *k as usize));
        }
        out.extend(std::iter::repeat_n(Gen::M, self.m as usize));
        out
    }
}

/// A single generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Z(usize),
    P(usize),
    Q(usize),
    D(usize),
    M,
}

impl Gen {
    pub fn bigrade(self) -> Bigrade {
        match self {
            Gen::Z(mu) => z_bigrade(mu),
            Gen::P(mu) | Gen::Q(mu) | Gen::D(mu) => p_bigrade(mu),
            Gen::M => Bigrade(0, 0),
        }
    }

    pub fn mono(self) -> Mono {
        let mut m = Mono::ONE;
        match self {
            Gen::Z(mu) => m.z[mu - 1] = 1,
            Gen::P(mu) => m.p[mu - 1] = 1,
            Gen::Q(mu) => m.q[mu - 1] = 1,
            Gen::D(mu) => m.d[mu - 1] = 1,
            Gen::M => m.m = 1,
        }
        m
    }

    pub fn name(self) -> String {
        match self {
            Gen::Z(mu) => format!("z{mu}"),
            Gen::P(mu) => format!("p{mu}"),
            Gen::Q(mu) => format!("q{mu}"),
            Gen::D(mu) => format!("d{mu}"),
            Gen::M => "m".to_string(),
        }
    }
}

fn binom(n: u16, k: u16) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn fact(n: u16) -> BigInt {
    (1..=n as u32).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `∂^α z^β = Σ_γ γ! C(α,γ) C(β,γ) z^(β−γ) ∂^(α−γ)`, as (z-shift, d-shift, coefficient).
fn leibniz(alpha: [u16; 4], beta: [u16; 4]) -> Vec<([u16; 4], [u16; 4], BigInt)> {
    let mut out = vec![([0u16; 4], [0u16; 4], BigInt::one())];
    for mu in 0..4 {
        let mut next = Vec::new();
        for (zs, ds, c) in &out {
            for g in 0..=alpha[mu].min(beta[mu]) {
                let mut zs = *zs;
                let mut ds = *ds;
                zs[mu] = beta[mu] - g;
                ds[mu] = alpha[mu] - g;
                next.push((zs, ds, c * fact(g) * binom(alpha[mu], g) * binom(beta[mu], g)));
            }
        }
        out = next;
    }
    out
}

/// Element of the Weyl-type algebra generated by `z, p, q, ∂, m` with
/// `[∂_μ, z^ν] = δ_μ^ν` and everything else commuting.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Mono, Scalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(g.mono(), Scalar::one())
    }

    pub fn z(mu: usize) -> Self {
        Self::gen(Gen::Z(mu))
    }

    pub fn p(mu: usize) -> Self {
        Self::gen(Gen::P(mu))
    }

    pub fn q(mu: usize) -> Self {
        Self::gen(Gen::Q(mu))
    }

    pub fn d(mu: usize) -> Self {
        Self::gen(Gen::D(mu))
    }

    pub fn m() -> Self {
        Self::gen(Gen::M)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.neg_ref());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        NCPolynomial { terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v.mul_ref(c));
        }
        out
    }

    pub fn scale_rat(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v.scale_rat(k));
        }
        out
    }

    /// Untwisted normal-ordered product.
    pub fn classical_mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1.mul_ref(c2);
                mono_classical_into(&mut out, m1, m2, &c);
            }
        }
        out
    }

    /// Star product in the given gauge.
    pub fn star_in(&self, o: &Self, gauge: Gauge) -> Result<Self> {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let f = gauge.factor(m1.bigrade(), m2.bigrade())?;
                let c = c1.mul_ref(c2).mul_ref(&f);
                mono_classical_into(&mut out, m1, m2, &c);
            }
        }
        Ok(out)
    }

    /// Star product with the paper's twisting element.
    pub fn star(&self, o: &Self) -> Self {
        self.star_in(o, Gauge::Paper).expect("paper gauge exponents are integral")
    }

    pub fn classical_pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.classical_mul(self))
    }

    pub fn star_pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.star(self))
    }

    /// Star commutator `f*g − g*f`.
    pub fn star_commutator(&self, o: &Self) -> Self {
        self.star(o).sub_ref(&o.star(self))
    }

    /// Homogeneous components by bigrade.
    pub fn components(&self) -> BTreeMap<Bigrade, NCPolynomial> {
        let mut out: BTreeMap<Bigrade, NCPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bigrade()).or_default().add_term(*m, c.clone());
        }
        out
    }

    /// The bigrade if this is homogeneous and nonzero.
    pub fn bigrade(&self) -> Option<Bigrade> {
        let mut it = self.terms.keys().map(|m| m.bigrade());
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn has_derivative(&self) -> bool {
        self.terms.keys().any(|m| m.has_derivative())
    }

    /// Keep only terms satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&Mono) -> bool) -> Self {
        NCPolynomial { terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.substitute(b)?);
        }
        Ok(out)
    }

    /// Classical action of this operator on a function: normal-order `self · w`
    /// and drop every term that still contains a derivative.
    pub fn apply_classical(&self, w: &Self) -> Self {
        self.classical_mul(w).filter(|m| !m.has_derivative())
    }

    /// Action in the twisted module: `r^(−h₂(a)h₁(w))` times the classical action,
    /// termwise in bigrade.
    pub fn apply_twisted(&self, w: &Self) -> Self {
        let mut out = Self::zero();
        for (ga, a) in self.components() {
            for (gw, wc) in w.components() {
                let f = Gauge::Paper.factor(ga, gw).expect("integral");
                out = out.add_ref(&a.apply_classical(&wc).scale(&f));
            }
        }
        out
    }

    pub fn first_term(&self) -> Option<String> {
        self.terms.iter().next().map(|(m, c)| render_term(m, c))
    }
}

fn mono_classical_into(out: &mut NCPolynomial, m1: &Mono, m2: &Mono, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let needs_leibniz = (0..4).any(|mu| m1.d[mu] > 0 && m2.z[mu] > 0);
    if !needs_leibniz {
        out.add_term(m1.commuting_mul(m2), c.clone());
        return;
    }
    for (zs, ds, k) in leibniz(m1.d, m2.z) {
        let mid = Mono { z: zs, p: [0; 4], q: [0; 4], d: ds, m: 0 };
        let left = Mono { d: [0; 4], ..*m1 };
        let right = Mono { z: [0; 4], ..*m2 };
        let mono = left.commuting_mul(&mid).commuting_mul(&right);
        out.add_term(mono, c.scale_rat(&BigRational::from_integer(k)));
    }
}

pub fn render_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    let mut push = |name: String, k: u16| match k {
        0 => {}
        1 => parts.push(name),
        _ => parts.push(format!("{name}^{k}")),
    };
    for mu in 0..4 {
        push(format!("z{}", mu + 1), m.z[mu]);
    }
    for mu in 0..4 {
        push(format!("p{}", mu + 1), m.p[mu]);
    }
    for mu in 0..4 {
        push(format!("q{}", mu + 1), m.q[mu]);
    }
    for mu in 0..4 {
        push(format!("d{}", mu + 1), m.d[mu]);
    }
    push("m".to_string(), m.m);
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn render_term(m: &Mono, c: &Scalar) -> String {
    format!("({})*{}", c, render_mono(m))
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| render_term(m, c)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{classical_bindings, int, r};
    use proptest::prelude::*;

    #[test]
    fn coordinate_star_factor() {
        let lhs = NCPolynomial::z(1).star(&NCPolynomial::z(2));
        assert_eq!(lhs, NCPolynomial::z(1).classical_mul(&NCPolynomial::z(2)).scale(&r()));
        let rhs = NCPolynomial::z(2).star(&NCPolynomial::z(1));
        assert_eq!(lhs, rhs.scale(&r_pow(2)));
    }

    #[test]
    fn derivative_star_coordinate() {
        let lhs = NCPolynomial::d(1).star(&NCPolynomial::z(1));
        let classical = NCPolynomial::z(1).classical_mul(&NCPolynomial::d(1)).add_ref(&NCPolynomial::one());
        assert_eq!(lhs, classical.scale(&r()));
    }

    #[test]
    fn leibniz_second_order() {
        // ∂₁² z¹² = z¹²∂₁² + 4z¹∂₁ + 2
        let d2 = NCPolynomial::d(1).classical_pow(2);
        let z2 = NCPolynomial::z(1).classical_pow(2);
        let lhs = d2.classical_mul(&z2);
        let expect = z2
            .classical_mul(&d2)
            .add_ref(&NCPolynomial::z(1).classical_mul(&NCPolynomial::d(1)).scale(&int(4)))
            .add_ref(&NCPolynomial::constant(int(2)));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn classical_limit_is_commutative() {
        let f = NCPolynomial::z(1).add_ref(&NCPolynomial::p(2));
        let g = NCPolynomial::z(3).add_ref(&NCPolynomial::z(2));
        let b = classical_bindings();
        assert_eq!(f.star(&g).substitute(&b).unwrap(), g.star(&f).substitute(&b).unwrap());
    }

    fn arb_gen() -> impl Strategy<Value = Gen> {
        prop_oneof![(1usize..5).prop_map(Gen::Z), (1usize..5).prop_map(Gen::P), (1usize..5).prop_map(Gen::D), Just(Gen::M)]
    }

    fn arb_mono() -> impl Strategy<Value = NCPolynomial> {
        (prop::collection::vec(arb_gen(), 0..4), -2i64..3).prop_map(|(gs, c)| {
            let c = if c == 0 { 1 } else { c };
            gs.into_iter().fold(NCPolynomial::constant(int(c)), |acc, g| acc.classical_mul(&NCPolynomial::gen(g)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn star_is_associative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            prop_assert_eq!(a.star(&b).star(&c), a.star(&b.star(&c)));
            let s = Gauge::SymmetricFootnote;
            prop_assert_eq!(a.star_in(&b, s).unwrap().star_in(&c, s).unwrap(), a.star_in(&b.star_in(&c, s).unwrap(), s).unwrap());
        }

        #[test]
        fn classical_product_is_associative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            prop_assert_eq!(a.classical_mul(&b).classical_mul(&c), a.classical_mul(&b.classical_mul(&c)));
        }
    }
}
