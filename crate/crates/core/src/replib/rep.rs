use num_traits::ToPrimitive;

use crate::error::{QtkError, Result};
use crate::matrix::Matrix;
use crate::scalars::{int, s_pow, LaurentPoly, Scalar, Var};

/// A finite-dimensional representation given by the images of a fixed
/// generator list.
///
/// sl2 reps carry `[H, X⁺, X⁻]`; Lorentz reps carry
/// `[H₁, X⁺₁, X⁻₁, H₂, X⁺₂, X⁻₂]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgRep {
    pub dim: usize,
    pub gens: Vec<Matrix>,
    pub label: String,
}

pub const H: usize = 0;
pub const XP: usize = 1;
pub const XM: usize = 2;
pub const H1: usize = 0;
pub const XP1: usize = 1;
pub const XM1: usize = 2;
pub const H2: usize = 3;
pub const XP2: usize = 4;
pub const XM2: usize = 5;

impl AlgRep {
    pub fn new(gens: Vec<Matrix>, label: impl Into<String>) -> Self {
        let dim = gens.first().map_or(1, |g| g.rows());
        AlgRep { dim, gens, label: label.into() }
    }

    /// The one-dimensional trivial representation with `n` generators.
    pub fn trivial(n: usize) -> Self {
        AlgRep::new(vec![Matrix::zeros(1, 1); n], "trivial")
    }

    pub fn gen(&self, k: usize) -> &Matrix {
        &self.gens[k]
    }

    pub fn is_lorentz(&self) -> bool {
        self.gens.len() == 6
    }

    /// Integer weights of a diagonal generator.
    pub fn weights(&self, k: usize) -> Result<Vec<i32>> {
        diagonal_weights(&self.gens[k]).map_err(|e| QtkError::UnsupportedRep(format!("{}: {}", self.label, e)))
    }

    /// Classical (primitive) tensor product: `g ↦ g⊗1 + 1⊗g`.
    pub fn tensor(&self, o: &AlgRep) -> AlgRep {
        let (ia, ib) = (Matrix::identity(self.dim), Matrix::identity(o.dim));
        let gens = self.gens.iter().zip(&o.gens).map(|(a, b)| a.kron(&ib).add_ref(&ia.kron(b))).collect();
        AlgRep::new(gens, format!("({})⊗({})", self.label, o.label))
    }

    /// Same carrier space with every generator conjugated: `g ↦ M⁻¹ g M`.
    pub fn conjugated(&self, m: &Matrix, label: impl Into<String>) -> Result<AlgRep> {
        let inv = m.inverse()?;
        Ok(AlgRep::new(self.gens.iter().map(|g| inv.mul_ref(g).mul_ref(m)).collect(), label))
    }

    /// Pair of sl2 reps as a Lorentz rep on `A ⊗ B`.
    pub fn lorentz_pair(a: &AlgRep, b: &AlgRep) -> AlgRep {
        let (ia, ib) = (Matrix::identity(a.dim), Matrix::identity(b.dim));
        let mut gens: Vec<Matrix> = a.gens.iter().map(|g| g.kron(&ib)).collect();
        gens.extend(b.gens.iter().map(|g| ia.kron(g)));
        AlgRep::new(gens, format!("pair({}, {})", a.label, b.label))
    }

    /// Re-express in a permuted basis: new basis vector `k` is old vector `perm[k]`.
    pub fn reindexed(&self, perm: &[usize], label: impl Into<String>) -> AlgRep {
        let p = Matrix::from_fn(self.dim, self.dim, |i, j| if perm[i] == j { Scalar::one() } else { Scalar::zero() });
        let pt = p.transpose();
        AlgRep::new(self.gens.iter().map(|g| p.mul_ref(g).mul_ref(&pt)).collect(), label)
    }

    /// First violated sl2 relation on the generator triple starting at `base`.
    pub fn sl2_relation_witness(&self, base: usize, xp_xm_bracket: &Matrix) -> Option<String> {
        let (h, xp, xm) = (&self.gens[base], &self.gens[base + 1], &self.gens[base + 2]);
        let two = int(2);
        let checks = [
            ("[H,X+]=2X+", h.commutator(xp), xp.scale(&two)),
            ("[H,X-]=-2X-", h.commutator(xm), xm.scale(&two).neg_ref()),
            ("[X+,X-]", xp.commutator(xm), xp_xm_bracket.clone()),
        ];
        checks.into_iter().find_map(|(name, l, r)| l.diff_witness(&r).map(|w| format!("{name} {w}")))
    }
}

pub fn diagonal_weights(m: &Matrix) -> std::result::Result<Vec<i32>, String> {
    if !m.is_diagonal() {
        return Err("generator is not diagonal".into());
    }
    (0..m.rows())
        .map(|i| {
            let c = m.get(i, i).as_constant().ok_or("weight depends on parameters")?;
            if !c.is_real() || !c.re.is_integer() {
                return Err(format!("non-integer weight {c}"));
            }
            c.re.to_integer().to_i32().ok_or_else(|| "weight overflow".to_string())
        })
        .collect()
}

/// Spin-`two_j/2` rep: `X⁻v_k = v_(k+1)`, `X⁺v_k = k(n−k+1)v_(k−1)`, `H = diag(n−2k)`.
pub fn spin_rep(two_j: usize) -> AlgRep {
    let n = two_j;
    let d = n + 1;
    let h = Matrix::diagonal((0..d).map(|k| int(n as i64 - 2 * k as i64)).collect());
    let mut xp = Matrix::zeros(d, d);
    let mut xm = Matrix::zeros(d, d);
    for k in 1..d {
        xp.set(k - 1, k, int((k * (n - k + 1)) as i64));
        xm.set(k, k - 1, Scalar::one());
    }
    AlgRep::new(vec![h, xp, xm], format!("spin{}/2", two_j))
}

/// `[n]_q = (s^(2n) − s^(−2n)) / (s^2 − s^(−2))`, a Laurent polynomial in `s`.
pub fn q_integer(n: i64) -> Scalar {
    let mut p = LaurentPoly::zero();
    // [n]_q = Σ_{k=0}^{n-1} q^(n-1-2k)
    for k in 0..n {
        let mut e = [0; crate::scalars::NVARS];
        e[Var::S as usize] = 2 * (n - 1 - 2 * k) as i32;
        p.add_term(e, crate::scalars::GaussRat::one());
    }
    Scalar::from_poly(p)
}

pub fn q_factorial(n: i64) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc.mul_ref(&q_integer(k)))
}

/// U_q(sl2) spin rep: `X⁺v_k = [k]_q[n−k+1]_q v_(k−1)`; `[X⁺, X⁻] = [H]_q`.
pub fn q_spin_rep(two_j: usize) -> AlgRep {
    let mut rep = spin_rep(two_j);
    let n = two_j as i64;
    for k in 1..=two_j {
        rep.gens[XP].set(k - 1, k, q_integer(k as i64).mul_ref(&q_integer(n - k as i64 + 1)));
    }
    rep.label = format!("q-spin{}/2", two_j);
    rep
}

/// `s^(c·H)` for a diagonal integer `H`.
pub fn s_power_of(h: &Matrix, c: i32) -> Result<Matrix> {
    let w = diagonal_weights(h).map_err(QtkError::UnsupportedRep)?;
    Ok(Matrix::diagonal(w.into_iter().map(|k| s_pow(c * k)).collect()))
}

/// `[H]_q` on a rep with diagonal integer `H`.
pub fn q_bracket_of(h: &Matrix) -> Result<Matrix> {
    let w = diagonal_weights(h).map_err(QtkError::UnsupportedRep)?;
    Ok(Matrix::diagonal(
        w.into_iter()
            .map(|k| {
                let num = s_pow(2 * k).sub_ref(&s_pow(-2 * k));
                num.div_ref(&s_pow(2).sub_ref(&s_pow(-2))).expect("nonzero denominator")
            })
            .collect(),
    ))
}

/// U_q tensor product: `H` primitive, `X± ↦ s^(−H)⊗X± + X±⊗s^H`.
/// `sign = −1` uses `s⁻¹` in place of `s`.
pub fn q_tensor(a: &AlgRep, b: &AlgRep, sign: i32) -> Result<AlgRep> {
    let (ia, ib) = (Matrix::identity(a.dim), Matrix::identity(b.dim));
    let h = a.gens[H].kron(&ib).add_ref(&ia.kron(&b.gens[H]));
    let a_minus = s_power_of(&a.gens[H], -sign)?;
    let b_plus = s_power_of(&b.gens[H], sign)?;
    let lift = |k: usize| a_minus.kron(&b.gens[k]).add_ref(&a.gens[k].kron(&b_plus));
    Ok(AlgRep::new(vec![h, lift(XP), lift(XM)], format!("({})⊗q({})", a.label, b.label)))
}

/// The (½,½) Lorentz rep in the coordinate weight basis
/// `z¹=(+,+), z²=(−,+), z³=(−,−), z⁴=(+,−)`.
pub fn minkowski_weight_rep() -> AlgRep {
    let half = spin_rep(1);
    let pair = AlgRep::lorentz_pair(&half, &half);
    // old flat index (i, j) = 2i + j
    pair.reindexed(&[0, 2, 3, 1], "minkowski")
}

/// Casimir `X⁻X⁺ + H²/4 + H/2`.
pub fn casimir(rep: &AlgRep) -> Matrix {
    let h = &rep.gens[H];
    let quarter = Scalar::from_frac(1, 4);
    let half = Scalar::from_frac(1, 2);
    rep.gens[XM].mul_ref(&rep.gens[XP]).add_ref(&h.mul_ref(h).scale(&quarter)).add_ref(&h.scale(&half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::frac;

    #[test]
    fn spin_half_is_defining() {
        let r = spin_rep(1);
        assert_eq!(r.gens[H], Matrix::diagonal(vec![int(1), int(-1)]));
        assert_eq!(r.gens[XP], Matrix::unit(2, 0, 1));
        assert_eq!(r.gens[XM], Matrix::unit(2, 1, 0));
        let triv = spin_rep(0);
        assert!(triv.gens.iter().all(|g| g.is_zero()));
    }

    #[test]
    fn spin_reps_satisfy_relations_and_casimir() {
        for n in 0..5 {
            let r = spin_rep(n);
            assert_eq!(r.sl2_relation_witness(0, &r.gens[H]), None);
            let j = frac(n as i64, 2);
            let jj = j.mul_ref(&j.add_ref(&int(1)));
            assert_eq!(casimir(&r), Matrix::identity(n + 1).scale(&jj));
        }
    }

    #[test]
    fn q_reps_satisfy_q_relations() {
        for n in 1..4 {
            let r = q_spin_rep(n);
            let br = q_bracket_of(&r.gens[H]).unwrap();
            assert_eq!(r.sl2_relation_witness(0, &br), None);
        }
        let t = q_tensor(&q_spin_rep(1), &q_spin_rep(2), 1).unwrap();
        let br = q_bracket_of(&t.gens[H]).unwrap();
        assert_eq!(t.sl2_relation_witness(0, &br), None);
    }

    #[test]
    fn minkowski_weights() {
        let m = minkowski_weight_rep();
        assert_eq!(m.weights(H1).unwrap(), vec![1, -1, -1, 1]);
        assert_eq!(m.weights(H2).unwrap(), vec![1, 1, -1, -1]);
        assert_eq!(m.sl2_relation_witness(0, &m.gens[H1]), None);
        assert_eq!(m.sl2_relation_witness(3, &m.gens[H2]), None);
    }
}
