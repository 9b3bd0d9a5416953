use crate::error::Result;
use crate::matrix::Matrix;
use crate::qmink::{Bigrade, Gauge, NCPolynomial};
use crate::scalars::{Bindings, Scalar};

/// Bigrades of the spinor basis `e⁽¹⁾..e⁽⁴⁾`, read from the chiral Cartan matrices.
pub const SPINOR_BIGRADES: [Bigrade; 4] = [Bigrade(-1, 0), Bigrade(1, 0), Bigrade(0, 1), Bigrade(0, -1)];

/// Bigrade of the matrix unit `E_αβ` (0-based).
pub fn unit_bigrade(a: usize, b: usize) -> Bigrade {
    SPINOR_BIGRADES[a].add(SPINOR_BIGRADES[b].neg())
}

/// Star product of `f` and `g` carrying extra weights `wf`, `wg`, applied by bigrade component.
fn graded(f: &NCPolynomial, wf: Bigrade, g: &NCPolynomial, wg: Bigrade, op: impl Fn(&NCPolynomial, &NCPolynomial) -> NCPolynomial) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    if f.is_zero() || g.is_zero() {
        return out;
    }
    for (gf, fc) in f.components() {
        for (gg, gc) in g.components() {
            let k = Gauge::Paper.factor(gf.add(wf), gg.add(wg)).expect("paper gauge is integral");
            out = out.add_ref(&op(&fc, &gc).scale(&k));
        }
    }
    out
}

/// `Σ f_αβ ⊗ E_αβ` in the twisted algebra of differential operators on spinor fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPoly {
    data: Vec<NCPolynomial>,
}

impl MatPoly {
    pub fn zero() -> Self {
        MatPoly { data: vec![NCPolynomial::zero(); 16] }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> NCPolynomial) -> Self {
        MatPoly { data: (0..16).map(|k| f(k / 4, k % 4)).collect() }
    }

    /// `f ⊗ 1`
    pub fn scalar(f: &NCPolynomial) -> Self {
        Self::from_fn(|a, b| if a == b { f.clone() } else { NCPolynomial::zero() })
    }

    pub fn identity() -> Self {
        Self::scalar(&NCPolynomial::one())
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self::from_fn(|a, b| NCPolynomial::constant(m.get(a, b).clone()))
    }

    pub fn get(&self, a: usize, b: usize) -> &NCPolynomial {
        &self.data[4 * a + b]
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        Self::from_fn(|a, b| self.get(a, b).add_ref(o.get(a, b)))
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        Self::from_fn(|a, b| self.get(a, b).sub_ref(o.get(a, b)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_fn(|a, b| self.get(a, b).scale(c))
    }

    pub fn map(&self, f: impl Fn(&NCPolynomial) -> NCPolynomial) -> Self {
        Self::from_fn(|a, b| f(self.get(a, b)))
    }

    pub fn star(&self, o: &Self) -> Self {
        Self::from_fn(|a, d| {
            (0..4).fold(NCPolynomial::zero(), |acc, b| {
                acc.add_ref(&graded(self.get(a, b), unit_bigrade(a, b), o.get(b, d), unit_bigrade(b, d), |x, y| x.classical_mul(y)))
            })
        })
    }

    /// Twisted action on a spinor field.
    pub fn act(&self, psi: &SpinorField) -> SpinorField {
        SpinorField(std::array::from_fn(|a| {
            (0..4).fold(NCPolynomial::zero(), |acc, b| {
                acc.add_ref(&graded(self.get(a, b), unit_bigrade(a, b), &psi.0[b], SPINOR_BIGRADES[b], |x, y| x.apply_classical(y)))
            })
        }))
    }

    /// Image in the ordinary matrix ring: `π(Φ₁A)ρ(Φ₂)`, column `β` picks up `r^(−h₂·h₁(e_β))`.
    pub fn pi_tilde(&self) -> MatPoly {
        Self::from_fn(|a, b| {
            let mut out = NCPolynomial::zero();
            for (g, c) in self.get(a, b).components() {
                let h = g.add(unit_bigrade(a, b));
                let k = Gauge::Paper.factor(h, Bigrade(SPINOR_BIGRADES[b].0, 0)).expect("integral");
                out = out.add_ref(&c.scale(&k));
            }
            out
        })
    }

    /// Twisted trace. Each term `f ⊗ E` is rewritten as `c · f * Ẽ` with `Ẽ` in the
    /// matrix sector, then `t̃(f * Ẽ) = f * Tr π̃(Ẽ)`.
    pub fn twisted_trace(&self) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for a in 0..4 {
            for b in 0..4 {
                let unit = MatPoly::from_fn(|i, j| if (i, j) == (a, b) { NCPolynomial::one() } else { NCPolynomial::zero() });
                let tr = unit.pi_tilde().classical_trace();
                if tr.is_zero() {
                    continue;
                }
                for (g, c) in self.get(a, b).components() {
                    let k = Gauge::Paper.factor(g, unit_bigrade(a, b)).expect("integral").inv().expect("monomial");
                    out = out.add_ref(&c.star(&tr).scale(&k));
                }
            }
        }
        out
    }

    pub fn classical_trace(&self) -> NCPolynomial {
        (0..4).fold(NCPolynomial::zero(), |acc, a| acc.add_ref(self.get(a, a)))
    }

    /// Bigrade of every term, if they all agree.
    pub fn bigrade(&self) -> Option<Bigrade> {
        let mut all = (0..16).flat_map(|k| {
            let (a, b) = (k / 4, k % 4);
            self.data[k].components().into_keys().map(move |g| g.add(unit_bigrade(a, b))).collect::<Vec<_>>()
        });
        let first = all.next()?;
        all.all(|g| g == first).then_some(first)
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let data = self.data.iter().map(|p| p.substitute(b)).collect::<Result<Vec<_>>>()?;
        Ok(MatPoly { data })
    }

    /// The constant entries as a scalar matrix, if every entry is constant.
    pub fn as_matrix(&self) -> Option<Matrix> {
        let mut m = Matrix::zeros(4, 4);
        for a in 0..4 {
            for b in 0..4 {
                let p = self.get(a, b);
                if p.is_zero() {
                    continue;
                }
                let c = p.terms().next().filter(|(mono, _)| **mono == crate::qmink::Mono::ONE && p.len() == 1)?.1;
                m.set(a, b, c.clone());
            }
        }
        Some(m)
    }

    pub fn first_nonzero(&self) -> Option<String> {
        (0..16).find_map(|k| self.data[k].first_term().map(|t| format!("[{},{}]: {t}", k / 4 + 1, k % 4 + 1)))
    }
}

/// `Σ ψ_α ⊗ e⁽ᵅ⁾`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorField(pub [NCPolynomial; 4]);

impl SpinorField {
    pub fn zero() -> Self {
        SpinorField(std::array::from_fn(|_| NCPolynomial::zero()))
    }

    /// Build from star coefficients: `Σ c_α * e⁽ᵅ⁾`.
    pub fn from_star_coeffs(c: [NCPolynomial; 4]) -> Self {
        SpinorField(std::array::from_fn(|a| graded(&c[a], Bigrade(0, 0), &NCPolynomial::one(), SPINOR_BIGRADES[a], |x, y| x.classical_mul(y))))
    }

    /// `f * ψ`
    pub fn left_star(&self, f: &NCPolynomial) -> Self {
        SpinorField(std::array::from_fn(|a| graded(f, Bigrade(0, 0), &self.0[a], SPINOR_BIGRADES[a], |x, y| x.classical_mul(y))))
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        SpinorField(std::array::from_fn(|a| self.0[a].sub_ref(&o.0[a])))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SpinorField(std::array::from_fn(|a| self.0[a].scale(c)))
    }

    pub fn map(&self, f: impl Fn(&NCPolynomial) -> NCPolynomial) -> Self {
        SpinorField(std::array::from_fn(|a| f(&self.0[a])))
    }

    pub fn first_nonzero(&self) -> Option<String> {
        (0..4).find_map(|a| self.0[a].first_term().map(|t| format!("e{}: {t}", a + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::r_pow;

    #[test]
    fn unit_weights() {
        assert_eq!(unit_bigrade(1, 3), Bigrade(1, 1));
        assert_eq!(unit_bigrade(2, 0), Bigrade(1, 1));
    }

    #[test]
    fn star_on_units() {
        let e = |a, b| MatPoly::from_fn(|i, j| if (i, j) == (a, b) { NCPolynomial::one() } else { NCPolynomial::zero() });
        // E31 * E13: weights (1,1) and (-1,-1) → r^{-1·(-1)} = r
        assert_eq!(e(2, 0).star(&e(0, 2)), e(2, 2).scale(&r_pow(1)));
    }

    #[test]
    fn trace_of_identity() {
        assert_eq!(MatPoly::identity().twisted_trace(), NCPolynomial::constant(Scalar::from_int(4)));
    }
}
