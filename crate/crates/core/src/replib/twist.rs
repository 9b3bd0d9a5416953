use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::rep::{q_tensor, AlgRep, H, H1, H2, XM, XM1, XM2};
use crate::error::{QtkError, Result};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalars::{int, r_pow, xi, Scalar, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistFamily {
    AbelianCartan,
    CartanPair,
    Jordanian,
    LorentzJordanian,
    RqAsTwist,
    Rh,
    JordanianCartan,
    Identity,
}

impl fmt::Display for TwistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("serializable");
        write!(f, "{}", v.as_str().unwrap_or("?"))
    }
}

pub type Recipe = Arc<dyn Fn(&AlgRep, &AlgRep) -> Result<Matrix> + Send + Sync>;
pub type Coproduct = Arc<dyn Fn(&AlgRep, &AlgRep) -> Result<AlgRep> + Send + Sync>;

/// A twist element known through its values on pairs of representations.
///
/// Because the element is a function of represented generators, evaluating
/// the recipe on a tensor-product rep gives its coproduct image.
#[derive(Clone)]
pub struct RepTwist {
    pub family: TwistFamily,
    pub label: String,
    recipe: Recipe,
    coproduct_left: Coproduct,
    coproduct_right: Coproduct,
    corrupt: Option<(usize, usize)>,
}

impl fmt::Debug for RepTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepTwist").field("family", &self.family).field("label", &self.label).finish()
    }
}

fn classical_coproduct() -> Coproduct {
    Arc::new(|a: &AlgRep, b: &AlgRep| Ok(a.tensor(b)))
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// `σ = −½ ln(1 − c ξ X)` for nilpotent `X`.
pub fn sigma_matrix(x: &Matrix, c: i64) -> Result<Matrix> {
    let arg = Matrix::identity(x.rows()).sub_ref(&x.scale(&xi().mul_ref(&int(c))));
    Ok(arg.log_unipotent()?.scale_rat(&-half()))
}

/// `exp(k · A⊗B)` for nilpotent `A⊗B`.
fn exp_kron(a: &Matrix, b: &Matrix, k: &Scalar) -> Result<Matrix> {
    a.kron(b).scale(k).exp_nilpotent()
}

/// Diagonal `r^(c · h_a(x) h_b(y))` on `V⊗W`.
fn cartan_diagonal(a: &AlgRep, ga: usize, b: &AlgRep, gb: usize, c: i32) -> Result<Matrix> {
    let wa = a.weights(ga)?;
    let wb = b.weights(gb)?;
    let mut d = Vec::with_capacity(wa.len() * wb.len());
    for x in &wa {
        for y in &wb {
            d.push(r_pow(c * x * y));
        }
    }
    Ok(Matrix::diagonal(d))
}

impl RepTwist {
    pub fn new(family: TwistFamily, label: impl Into<String>, recipe: Recipe) -> Self {
        RepTwist {
            family,
            label: label.into(),
            recipe,
            coproduct_left: classical_coproduct(),
            coproduct_right: classical_coproduct(),
            corrupt: None,
        }
    }

    pub fn with_coproducts(mut self, left: Coproduct, right: Coproduct) -> Self {
        self.coproduct_left = left;
        self.coproduct_right = right;
        self
    }

    /// Negative control: the leg matrices get entry `(i, j)` doubled while the
    /// coproduct lifts stay exact.
    pub fn corrupted(mut self, i: usize, j: usize) -> Self {
        self.corrupt = Some((i, j));
        self.label = format!("{} (corrupted)", self.label);
        self
    }

    pub fn matrix(&self, a: &AlgRep, b: &AlgRep) -> Result<Matrix> {
        let mut m = (self.recipe)(a, b)?;
        if let Some((i, j)) = self.corrupt {
            let v = m.get(i, j).mul_ref(&int(2));
            let v = if v.is_zero() { Scalar::one() } else { v };
            m.set(i, j, v);
        }
        Ok(m)
    }

    fn lift(&self, a: &AlgRep, b: &AlgRep) -> Result<Matrix> {
        (self.recipe)(a, b)
    }

    /// `(Δ⊗id)(Φ)Φ₁₂ = (id⊗Δ)(Φ)Φ₂₃` on `V1⊗V2⊗V3`.
    /// `((Δ⊗id)Φ)Φ₁₂` and `((id⊗Δ)Φ)Φ₂₃` on `v1⊗v2⊗v3`.
    pub fn cocycle_sides(&self, v1: &AlgRep, v2: &AlgRep, v3: &AlgRep) -> Result<(Matrix, Matrix)> {
        let dims = [v1.dim, v2.dim, v3.dim];
        let v12 = (self.coproduct_left)(v1, v2)?;
        let v23 = (self.coproduct_left)(v2, v3)?;
        let lhs = self.lift(&v12, v3)?.mul_ref(&self.matrix(v1, v2)?.embed(&dims, &[0, 1]));
        let rhs = self.lift(v1, &v23)?.mul_ref(&self.matrix(v2, v3)?.embed(&dims, &[1, 2]));
        Ok((lhs, rhs))
    }

    pub fn cocycle_check_rep(&self, v1: &AlgRep, v2: &AlgRep, v3: &AlgRep) -> Result<CheckReport> {
        let (lhs, rhs) = self.cocycle_sides(v1, v2, v3)?;
        let name = format!("cocycle_rep[{}; {}⊗{}⊗{}]", self.label, v1.label, v2.label, v3.label);
        Ok(CheckReport::from_witness(name, None, lhs.diff_witness(&rhs)))
    }

    /// Normalization: contracting either leg with the trivial rep gives the identity.
    pub fn normalization_check(&self, v: &AlgRep) -> Result<CheckReport> {
        let triv = AlgRep::trivial(v.gens.len());
        let l = self.lift(&triv, v)?;
        let r = self.lift(v, &triv)?;
        let w = l.diff_witness(&Matrix::identity(v.dim)).or_else(|| r.diff_witness(&Matrix::identity(v.dim)));
        Ok(CheckReport::from_witness(format!("normalization[{}; {}]", self.label, v.label), None, w))
    }

    /// `Δ_A(Φ) = Φ₁₃Φ₂₃` on `A1⊗A2⊗B` and `Δ_B(Φ) = Φ₁₃Φ₁₂` on `A⊗B1⊗B2`.
    pub fn factorizability_check(&self, a1: &AlgRep, a2: &AlgRep, b1: &AlgRep, b2: &AlgRep) -> Result<Vec<CheckReport>> {
        let da = (self.coproduct_left)(a1, a2)?;
        let lhs = self.lift(&da, b1)?;
        let dims = [a1.dim, a2.dim, b1.dim];
        let rhs = self.matrix(a1, b1)?.embed(&dims, &[0, 2]).mul_ref(&self.matrix(a2, b1)?.embed(&dims, &[1, 2]));
        let first = CheckReport::from_witness(format!("factorizability_A[{}]", self.label), None, lhs.diff_witness(&rhs));
        let db = (self.coproduct_right)(b1, b2)?;
        let lhs = self.lift(a1, &db)?;
        let dims = [a1.dim, b1.dim, b2.dim];
        let rhs = self.matrix(a1, b2)?.embed(&dims, &[0, 2]).mul_ref(&self.matrix(a1, b1)?.embed(&dims, &[0, 1]));
        let second = CheckReport::from_witness(format!("factorizability_B[{}]", self.label), None, lhs.diff_witness(&rhs));
        Ok(vec![first, second])
    }

    /// Twisted tensor-product rep: generators `Φ⁻¹Δ(g)Φ`.
    pub fn twisted_tensor(&self, a: &AlgRep, b: &AlgRep) -> Result<AlgRep> {
        let base = (self.coproduct_left)(a, b)?;
        base.conjugated(&self.matrix(a, b)?, format!("{}⊗~{}", a.label, b.label))
    }
}

/// Identity twist for reps with `ngens` generators.
pub fn identity_twist() -> RepTwist {
    RepTwist::new(TwistFamily::Identity, "identity", Arc::new(|a: &AlgRep, b: &AlgRep| Ok(Matrix::identity(a.dim * b.dim))))
}

/// Abelian Cartan twist `r^(−H₂⊗H₁)` on Lorentz reps: entry `r^(−h₂(x)h₁(y))`.
pub fn abelian_cartan() -> RepTwist {
    RepTwist::new(TwistFamily::AbelianCartan, "abelian-cartan", Arc::new(|a: &AlgRep, b: &AlgRep| cartan_diagonal(a, H2, b, H1, -1)))
}

/// `r^(H₁⊗H₂)` between two sl2 factors, with U_q coproduct on the left
/// and U_(q^-1) on the right.
pub fn cartan_pair() -> RepTwist {
    RepTwist::new(TwistFamily::CartanPair, "cartan-pair", Arc::new(|a: &AlgRep, b: &AlgRep| cartan_diagonal(a, H, b, H, 1))).with_coproducts(
        Arc::new(|a: &AlgRep, b: &AlgRep| q_tensor(a, b, 1)),
        Arc::new(|a: &AlgRep, b: &AlgRep| q_tensor(a, b, -1)),
    )
}

/// Jordanian `exp(−H⊗σ)`, `σ = −½ ln(1 − 2ξX⁻)`, on sl2 reps.
pub fn jordanian() -> RepTwist {
    RepTwist::new(
        TwistFamily::Jordanian,
        "jordanian",
        Arc::new(|a: &AlgRep, b: &AlgRep| exp_kron(&a.gens[H], &sigma_matrix(&b.gens[XM], 2)?, &int(-1))),
    )
}

/// `exp{(H₁+H₂) ⊗ ½ ln(1 − ξ(X⁻₁+X⁻₂))}` on Lorentz reps.
pub fn lorentz_jordanian() -> RepTwist {
    RepTwist::new(
        TwistFamily::LorentzJordanian,
        "lorentz-jordanian",
        Arc::new(|a: &AlgRep, b: &AlgRep| {
            let e = a.gens[H1].add_ref(&a.gens[H2]);
            let y = b.gens[XM1].add_ref(&b.gens[XM2]);
            exp_kron(&e, &sigma_matrix(&y, 1)?, &int(-1))
        }),
    )
}

fn double_jordanian(a: &AlgRep, b: &AlgRep) -> Result<Matrix> {
    let j1 = exp_kron(&a.gens[H1], &sigma_matrix(&b.gens[XM1], 2)?, &int(-1))?;
    let j2 = exp_kron(&a.gens[H2], &sigma_matrix(&b.gens[XM2], 2)?, &int(-1))?;
    Ok(j1.mul_ref(&j2))
}

/// `r^(σ₁⊗σ₂) = exp(t σ₁⊗σ₂)` with `t` standing for `ln r`.
fn sigma_cartan(a: &AlgRep, b: &AlgRep) -> Result<Matrix> {
    exp_kron(&sigma_matrix(&a.gens[XM1], 2)?, &sigma_matrix(&b.gens[XM2], 2)?, &Scalar::var(Var::T))
}

/// Composite of the jordanian twist on both sl2 factors with `r^(σ₁⊗σ₂)`.
/// `jordanian_first = true` multiplies `Φ_J · r^(σ₁⊗σ₂)`, i.e. the second factor
/// twists the already jordanian-twisted coproduct.
pub fn jordanian_cartan(jordanian_first: bool) -> RepTwist {
    let label = if jordanian_first { "jordanian-then-sigma-cartan" } else { "sigma-cartan-then-jordanian" };
    RepTwist::new(
        TwistFamily::JordanianCartan,
        label,
        Arc::new(move |a: &AlgRep, b: &AlgRep| {
            let j = double_jordanian(a, b)?;
            let c = sigma_cartan(a, b)?;
            Ok(if jordanian_first { j.mul_ref(&c) } else { c.mul_ref(&j) })
        }),
    )
}

/// `R_q` as the twisting element between two U_q(sl2) factors.
pub fn rq_as_twist() -> RepTwist {
    RepTwist::new(TwistFamily::RqAsTwist, "rq-as-twist", Arc::new(|a: &AlgRep, b: &AlgRep| super::rmatrix::rq_matrix(a, b)))
        .with_coproducts(Arc::new(|a: &AlgRep, b: &AlgRep| q_tensor(a, b, 1)), Arc::new(|a: &AlgRep, b: &AlgRep| q_tensor(a, b, 1)))
}

/// `R_h` as the twisting element between two jordanian U_h(sl2) factors.
pub fn rh_as_twist() -> RepTwist {
    let jt: Coproduct = Arc::new(|a: &AlgRep, b: &AlgRep| jordanian().twisted_tensor(a, b));
    RepTwist::new(TwistFamily::Rh, "rh", Arc::new(|a: &AlgRep, b: &AlgRep| super::rmatrix::rh_matrix(a, b))).with_coproducts(jt.clone(), jt)
}

/// Named twist by family.
pub fn build_twist(family: TwistFamily) -> RepTwist {
    match family {
        TwistFamily::AbelianCartan => abelian_cartan(),
        TwistFamily::CartanPair => cartan_pair(),
        TwistFamily::Jordanian => jordanian(),
        TwistFamily::LorentzJordanian => lorentz_jordanian(),
        TwistFamily::RqAsTwist => rq_as_twist(),
        TwistFamily::Rh => rh_as_twist(),
        TwistFamily::JordanianCartan => jordanian_cartan(true),
        TwistFamily::Identity => identity_twist(),
    }
}

pub(crate) fn require_square(m: &Matrix, what: &str) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(QtkError::Unsupported(format!("{what} must be square")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replib::rep::{minkowski_weight_rep, q_spin_rep, spin_rep};
    use crate::scalars::classical_bindings;

    #[test]
    fn jordanian_sigma_on_spin_half() {
        let s = sigma_matrix(&spin_rep(1).gens[XM], 2).unwrap();
        assert_eq!(s, Matrix::unit(2, 1, 0).scale(&xi()));
    }

    #[test]
    fn abelian_entry_matches_a_table() {
        let m = minkowski_weight_rep();
        let phi = abelian_cartan().matrix(&m, &m).unwrap();
        assert_eq!(*phi.get(0, 0), r_pow(-1));
    }

    #[test]
    fn cocycles_pass_and_corruption_fails() {
        let m = minkowski_weight_rep();
        assert!(abelian_cartan().cocycle_check_rep(&m, &m, &m).unwrap().passed());
        let bad = abelian_cartan().corrupted(0, 0).cocycle_check_rep(&m, &m, &m).unwrap();
        assert!(!bad.passed());
        let (h, one) = (spin_rep(1), spin_rep(2));
        assert!(jordanian().cocycle_check_rep(&h, &one, &h).unwrap().passed());
        assert!(lorentz_jordanian().cocycle_check_rep(&m, &m, &m).unwrap().passed());
    }

    #[test]
    fn normalization_and_classical_limit() {
        let m = minkowski_weight_rep();
        for t in [abelian_cartan(), lorentz_jordanian(), jordanian_cartan(true)] {
            assert!(t.normalization_check(&m).unwrap().passed());
            let mut b = classical_bindings();
            b.push((Var::T, crate::scalars::GaussRat::zero()));
            assert!(t.matrix(&m, &m).unwrap().substitute(&b).unwrap().is_identity());
        }
    }

    #[test]
    fn factorizable_twists() {
        let (h, q) = (spin_rep(1), q_spin_rep(1));
        for rep in cartan_pair().factorizability_check(&h, &h, &h, &h).unwrap() {
            assert!(rep.passed(), "{rep:?}");
        }
        for rep in rq_as_twist().factorizability_check(&q, &q, &q, &q).unwrap() {
            assert!(rep.passed(), "{rep:?}");
        }
        for rep in identity_twist().factorizability_check(&h, &h, &h, &h).unwrap() {
            assert!(rep.passed());
        }
    }
}
