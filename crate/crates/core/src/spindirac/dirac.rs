use std::fmt;

use serde::Serialize;

use super::gamma::{classical_gamma, gamma, slash};
use super::matpoly::{MatPoly, SpinorField};
use crate::error::{QtkError, Result};
use crate::qmink::{reduce_mass_shell, truncated_exp_pairing, twisted_dalembertian, NCPolynomial};
use crate::report::CheckReport;
use crate::scalars::{classical_bindings, int, r_pow, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinorKind {
    U,
    V,
}

impl SpinorKind {
    /// `+1` for positive energy.
    fn energy(self) -> i64 {
        match self {
            SpinorKind::U => 1,
            SpinorKind::V => -1,
        }
    }
}

const ALL: [(SpinorKind, usize); 4] = [(SpinorKind::U, 1), (SpinorKind::U, 2), (SpinorKind::V, 1), (SpinorKind::V, 2)];

fn p(mu: usize) -> NCPolynomial {
    NCPolynomial::p(mu)
}

fn m() -> NCPolynomial {
    NCPolynomial::m()
}

/// Displayed classical spinor components.
pub fn paper_spinor(kind: SpinorKind, alpha: usize) -> [NCPolynomial; 4] {
    let s = int(kind.energy());
    match alpha {
        1 => [p(1).add_ref(&m()), p(4), p(3).add_ref(&m()).scale(&s), p(4).scale(&s).neg_ref()],
        2 => [p(2), p(3).add_ref(&m()), p(2).scale(&s).neg_ref(), p(1).add_ref(&m()).scale(&s)],
        _ => panic!("spinor index {alpha}"),
    }
}

/// Displayed twisted spinor coefficients `c_α` in `Σ c_α * e⁽ᵅ⁾`.
pub fn paper_twisted_coeffs(kind: SpinorKind, alpha: usize) -> [NCPolynomial; 4] {
    let s = int(kind.energy());
    let r = r_pow(1);
    match alpha {
        1 => [p(1).scale(&r).add_ref(&m()), p(4).scale(&r), p(3).add_ref(&m()).scale(&s), p(4).scale(&s).neg_ref()],
        2 => [p(2).scale(&r), p(3).scale(&r).add_ref(&m()), p(2).scale(&s).neg_ref(), p(1).add_ref(&m()).scale(&s)],
        _ => panic!("spinor index {alpha}"),
    }
}

/// Component relabeling and mass sign applied to the displayed spinors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Calibration {
    /// New component `k` is old component `perm[k]`.
    pub perm: [usize; 4],
    pub signs: [i8; 4],
    /// `Γu = mass_sign·m·u` for positive energy.
    pub mass_sign: i8,
}

impl Calibration {
    pub const IDENTITY: Calibration = Calibration { perm: [0, 1, 2, 3], signs: [1; 4], mass_sign: 1 };

    pub fn apply(&self, c: &[NCPolynomial; 4]) -> [NCPolynomial; 4] {
        std::array::from_fn(|k| c[self.perm[k]].scale(&int(self.signs[k] as i64)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for Calibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = (0..4)
            .map(|k| format!("{}e{}", if self.signs[k] < 0 { "-" } else { "" }, self.perm[k] + 1))
            .collect();
        write!(f, "components [{}], mass sign {}", comps.join(", "), if self.mass_sign < 0 { "-" } else { "+" })
    }
}

/// `γ^μ p_μ` with classical matrices and commuting momenta.
pub fn classical_slash() -> MatPoly {
    (1..=4).fold(MatPoly::zero(), |acc, mu| {
        let g = classical_gamma(mu);
        acc.add_ref(&MatPoly::from_fn(|a, b| p(mu).scale(g.get(a, b))))
    })
}

fn classical_apply(mat: &MatPoly, v: &[NCPolynomial; 4]) -> [NCPolynomial; 4] {
    std::array::from_fn(|a| (0..4).fold(NCPolynomial::zero(), |acc, b| acc.add_ref(&mat.get(a, b).classical_mul(&v[b]))))
}

/// Residual of `(Γ − εm)u` modulo the mass shell.
fn classical_residual(u: &[NCPolynomial; 4], eps: i64) -> Option<String> {
    let gu = classical_apply(&classical_slash(), u);
    (0..4).find_map(|a| {
        let r = reduce_mass_shell(&gu[a].sub_ref(&m().classical_mul(&u[a]).scale(&int(eps))));
        r.first_term().map(|t| format!("e{}: {t}", a + 1))
    })
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|k| p.contains(&k)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Search component relabelings and signs, identity first, until the displayed
/// classical spinors satisfy `Γu = m u`, `Γv = −m v` on the mass shell.
pub fn calibrate() -> Result<Calibration> {
    for mass_sign in [1i8, -1] {
        for perm in permutations() {
            for bits in 0..16u8 {
                let signs = std::array::from_fn(|k| if bits >> k & 1 == 1 { -1 } else { 1 });
                let cal = Calibration { perm, signs, mass_sign };
                let ok = ALL.iter().all(|&(kind, alpha)| {
                    let u = cal.apply(&paper_spinor(kind, alpha));
                    classical_residual(&u, mass_sign as i64 * kind.energy()).is_none()
                });
                if ok {
                    return Ok(cal);
                }
            }
        }
    }
    let w = classical_residual(&paper_spinor(SpinorKind::U, 1), 1).unwrap_or_default();
    Err(QtkError::Calibration(format!("no relabeling solves the classical equation; u1 residual {w}")))
}

/// `D̃ = i(r⁻¹γ̃¹*∂̃₁ + rγ̃²*∂̃₂ + r⁻¹γ̃³*∂̃₃ + rγ̃⁴*∂̃₄)`.
pub fn dirac_operator() -> MatPoly {
    (1..=4)
        .fold(MatPoly::zero(), |acc, mu| {
            let c = r_pow(if mu % 2 == 1 { -1 } else { 1 });
            acc.add_ref(&gamma(mu).star(&MatPoly::scalar(&NCPolynomial::d(mu))).scale(&c))
        })
        .scale(&Scalar::i())
}

fn classical_dirac() -> MatPoly {
    (1..=4).fold(MatPoly::zero(), |acc, mu| {
        let g = classical_gamma(mu);
        acc.add_ref(&MatPoly::from_fn(|a, b| NCPolynomial::d(mu).scale(g.get(a, b))))
    })
    .scale(&Scalar::i())
}

fn reduce_field(psi: &SpinorField) -> SpinorField {
    psi.map(reduce_mass_shell)
}

pub fn dirac_checks(n: u32) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let d = dirac_operator();

    let w = match d.bigrade() {
        Some(g) if g.0 == 0 && g.1 == 0 => None,
        g => Some(format!("weight {g:?}")),
    };
    out.push(CheckReport::from_witness("dirac operator is a Lorentz scalar", None, w));
    out.push(CheckReport::from_witness(
        "dirac operator at r=1 is i gamma.d",
        None,
        d.substitute(&classical_bindings())?.sub_ref(&classical_dirac()).first_nonzero(),
    ));
    let sq = d.star(&d).add_ref(&MatPoly::scalar(&twisted_dalembertian()));
    out.push(CheckReport::from_witness("dirac D*D = -box", None, sq.first_nonzero()));

    let w = ALL.iter().find_map(|&(kind, alpha)| {
        let twisted = SpinorField::from_star_coeffs(paper_twisted_coeffs(kind, alpha));
        twisted.sub_ref(&SpinorField(paper_spinor(kind, alpha))).first_nonzero().map(|t| format!("{kind:?}{alpha}: {t}"))
    });
    out.push(CheckReport::from_witness("dirac displayed twisted spinors are star forms of the classical ones", None, w));

    let cal = match calibrate() {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckReport::fail("dirac spinor calibration", None, e.to_string()));
            return Ok(out);
        }
    };
    let mut rep = CheckReport::pass("dirac spinor calibration", None);
    if !cal.is_identity() {
        rep = rep.with_detail(format!("displayed spinors need {cal}"));
    }
    out.push(rep);

    let slash_p = slash(NCPolynomial::p);
    let w = ALL.iter().find_map(|&(kind, alpha)| {
        let u = SpinorField(cal.apply(&SpinorField::from_star_coeffs(paper_twisted_coeffs(kind, alpha)).0));
        let eps = cal.mass_sign as i64 * kind.energy();
        let res = slash_p.act(&u).sub_ref(&u.left_star(&m()).scale(&int(eps)));
        reduce_field(&res).first_nonzero().map(|t| format!("{kind:?}{alpha}: {t}"))
    });
    out.push(CheckReport::from_witness("dirac momentum-space eigen-identity", None, w));

    let w = ALL.iter().find_map(|&(kind, alpha)| {
        let u = SpinorField(cal.apply(&SpinorField::from_star_coeffs(paper_twisted_coeffs(kind, alpha)).0));
        let wave = truncated_exp_pairing(n, -kind.energy());
        let psi = u.left_star(&wave);
        let eps = cal.mass_sign as i64;
        let res = reduce_field(&d.act(&psi).sub_ref(&psi.left_star(&m()).scale(&int(eps))));
        res.map(|c| c.filter(|mono| mono.z_degree() + 1 < n)).first_nonzero().map(|t| format!("{kind:?}{alpha}: {t}"))
    });
    out.push(CheckReport::from_witness("dirac position-space plane waves", Some(n as usize), w));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_suite_passes() {
        for r in dirac_checks(6).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn calibration_is_block_swap() {
        let cal = calibrate().unwrap();
        assert_eq!(cal.perm, [2, 3, 0, 1]);
        assert_eq!(cal.mass_sign, 1);
    }

    #[test]
    fn displayed_spinors_fail_uncalibrated() {
        assert!(classical_residual(&paper_spinor(SpinorKind::U, 1), 1).is_some());
    }

    #[test]
    fn zero_momentum_massless_is_trivial() {
        let zero: [NCPolynomial; 4] = std::array::from_fn(|_| NCPolynomial::zero());
        assert!(classical_residual(&zero, 1).is_none());
    }
}
