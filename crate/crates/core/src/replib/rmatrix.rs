use serde::{Deserialize, Serialize};

use super::rep::{q_factorial, s_power_of, AlgRep, H, XM, XP};
use super::twist::{require_square, sigma_matrix, RepTwist};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalars::{s_pow, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RSource {
    Classical,
    Rq,
    Rh,
    Twisted,
}

/// R-matrix on `V ⊗ V` for a single carrier space of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub matrix: Matrix,
    pub dim: usize,
    pub source: RSource,
}

/// `s^(H⊗H) Σ_n (1−s⁻⁴)ⁿ/[n]_q! s^(n(n−1)) (s^H X⁺ ⊗ s^(−H) X⁻)ⁿ`
pub fn rq_matrix(a: &AlgRep, b: &AlgRep) -> Result<Matrix> {
    let ha = a.weights(H)?;
    let hb = b.weights(H)?;
    let mut diag = Vec::new();
    for x in &ha {
        for y in &hb {
            diag.push(s_pow(x * y));
        }
    }
    let kk = Matrix::diagonal(diag);
    let left = s_power_of(&a.gens[H], 1)?.mul_ref(&a.gens[XP]);
    let right = s_power_of(&b.gens[H], -1)?.mul_ref(&b.gens[XM]);
    let base = left.kron(&right);
    let c = Scalar::one().sub_ref(&s_pow(-4));
    let mut sum = Matrix::identity(a.dim * b.dim);
    let mut p = Matrix::identity(a.dim * b.dim);
    for n in 1..=(a.dim.max(b.dim) as i64) {
        p = p.mul_ref(&base);
        if p.is_zero() {
            break;
        }
        let coef = c.pow(n as i32)?.mul_ref(&s_pow((n * (n - 1)) as i32)).div_ref(&q_factorial(n))?;
        sum = sum.add_ref(&p.scale(&coef));
    }
    Ok(kk.mul_ref(&sum))
}

/// `R_h = exp(σ⊗H) exp(−H⊗σ)`.
pub fn rh_matrix(a: &AlgRep, b: &AlgRep) -> Result<Matrix> {
    let first = sigma_matrix(&a.gens[XM], 2)?.kron(&b.gens[H]).exp_nilpotent()?;
    let second = a.gens[H].kron(&sigma_matrix(&b.gens[XM], 2)?).neg_ref().exp_nilpotent()?;
    Ok(first.mul_ref(&second))
}

impl RMatrix {
    pub fn classical(dim: usize) -> Self {
        RMatrix { matrix: Matrix::identity(dim * dim), dim, source: RSource::Classical }
    }

    pub fn rq(rep: &AlgRep) -> Result<Self> {
        Ok(RMatrix { matrix: rq_matrix(rep, rep)?, dim: rep.dim, source: RSource::Rq })
    }

    pub fn rh(rep: &AlgRep) -> Result<Self> {
        Ok(RMatrix { matrix: rh_matrix(rep, rep)?, dim: rep.dim, source: RSource::Rh })
    }

    /// `R̃ = Φ₂₁⁻¹ R Φ`.
    pub fn twisted(r: &RMatrix, phi: &RepTwist, rep: &AlgRep) -> Result<Self> {
        let phi_m = phi.matrix(rep, rep)?;
        let flip = Matrix::flip(rep.dim, rep.dim);
        let phi21 = flip.mul_ref(&phi_m).mul_ref(&flip);
        let matrix = phi21.inverse()?.mul_ref(&r.matrix).mul_ref(&phi_m);
        Ok(RMatrix { matrix, dim: rep.dim, source: RSource::Twisted })
    }

    fn legs(&self) -> (Matrix, Matrix, Matrix) {
        let dims = [self.dim; 3];
        (self.matrix.embed(&dims, &[0, 1]), self.matrix.embed(&dims, &[0, 2]), self.matrix.embed(&dims, &[1, 2]))
    }

    /// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂`
    pub fn ybe_check(&self, label: &str) -> Result<CheckReport> {
        require_square(&self.matrix, "R")?;
        let (r12, r13, r23) = self.legs();
        let lhs = r12.mul_ref(&r13).mul_ref(&r23);
        let rhs = r23.mul_ref(&r13).mul_ref(&r12);
        Ok(CheckReport::from_witness(format!("ybe[{label}]"), None, lhs.diff_witness(&rhs)))
    }

    pub fn flipped(&self) -> Matrix {
        let flip = Matrix::flip(self.dim, self.dim);
        flip.mul_ref(&self.matrix).mul_ref(&flip)
    }

    /// `R₂₁R = 1`
    pub fn triangularity_check(&self, label: &str) -> CheckReport {
        let prod = self.flipped().mul_ref(&self.matrix);
        CheckReport::from_witness(format!("triangularity[{label}]"), None, prod.diff_witness(&Matrix::identity(self.dim * self.dim)))
    }

    /// `R Δ(g) = Δᵒᵖ(g) R` for every generator of a tensor rep on `V⊗V`.
    pub fn intertwining_check(&self, label: &str, tensor: &AlgRep) -> CheckReport {
        let flip = Matrix::flip(self.dim, self.dim);
        let w = tensor.gens.iter().enumerate().find_map(|(k, g)| {
            let op = flip.mul_ref(g).mul_ref(&flip);
            self.matrix.mul_ref(g).diff_witness(&op.mul_ref(&self.matrix)).map(|w| format!("generator {k}: {w}"))
        });
        CheckReport::from_witness(format!("intertwining[{label}]"), None, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replib::rep::{minkowski_weight_rep, q_spin_rep, q_tensor, spin_rep};
    use crate::replib::twist::{abelian_cartan, jordanian};
    use crate::scalars::{classical_bindings, GaussRat, Var};

    #[test]
    fn rq_spin_half_entries() {
        let r = RMatrix::rq(&q_spin_rep(1)).unwrap();
        let m = &r.matrix;
        assert_eq!(*m.get(0, 0), s_pow(1));
        assert_eq!(*m.get(1, 1), s_pow(-1));
        assert_eq!(*m.get(2, 2), s_pow(-1));
        assert_eq!(*m.get(3, 3), s_pow(1));
        assert_eq!(*m.get(1, 2), s_pow(1).sub_ref(&s_pow(-3)));
        assert!(r.ybe_check("rq").unwrap().passed());
        let t = q_tensor(&q_spin_rep(1), &q_spin_rep(1), 1).unwrap();
        assert!(r.intertwining_check("rq", &t).passed());
    }

    #[test]
    fn rq_spin_one_ybe() {
        let r = RMatrix::rq(&q_spin_rep(2)).unwrap();
        assert!(r.ybe_check("rq1").unwrap().passed());
    }

    #[test]
    fn rh_is_flipped_twist_ratio() {
        let v = spin_rep(1);
        let rh = RMatrix::rh(&v).unwrap();
        let rt = RMatrix::twisted(&RMatrix::classical(2), &jordanian(), &v).unwrap();
        assert_eq!(rh.matrix, rt.matrix);
        assert!(rh.ybe_check("rh").unwrap().passed());
        assert!(rh.triangularity_check("rh").passed());
        let b = vec![(Var::Xi, GaussRat::zero())];
        assert!(rh.matrix.substitute(&b).unwrap().is_identity());
        let t = jordanian().twisted_tensor(&v, &v).unwrap();
        assert!(rh.intertwining_check("rh", &t).passed());
    }

    #[test]
    fn abelian_twisted_r_is_triangular() {
        let m = minkowski_weight_rep();
        let rt = RMatrix::twisted(&RMatrix::classical(4), &abelian_cartan(), &m).unwrap();
        assert!(rt.ybe_check("abelian").unwrap().passed());
        assert!(rt.triangularity_check("abelian").passed());
        assert!(rt.matrix.substitute(&classical_bindings()).unwrap().is_identity());
    }
}
