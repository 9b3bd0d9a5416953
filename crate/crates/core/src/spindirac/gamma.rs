use super::matpoly::{MatPoly, SPINOR_BIGRADES};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::qmink::{exchange_tables, metric, z_bigrade, Gauge, NCPolynomial};
use crate::report::CheckReport;
use crate::scalars::{classical_bindings, int, r_pow, Scalar};

/// The displayed twisted gamma matrices (1-based `μ`).
pub fn paper_gamma(mu: usize) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    let entries: &[(usize, usize, i32, i64)] = match mu {
        1 => &[(2, 4, 0, 1), (3, 1, 1, 1)],
        2 => &[(1, 4, 0, -1), (3, 2, -1, 1)],
        3 => &[(1, 3, 0, 1), (4, 2, 1, 1)],
        4 => &[(2, 3, 0, -1), (4, 1, -1, 1)],
        _ => panic!("gamma index {mu}"),
    };
    for &(i, j, e, s) in entries {
        m.set(i - 1, j - 1, r_pow(e).mul_ref(&int(s)));
    }
    m
}

/// Classical chiral gamma: the `r = 1` value of the displayed matrix.
pub fn classical_gamma(mu: usize) -> Matrix {
    paper_gamma(mu).substitute(&classical_bindings()).expect("constant entries")
}

/// `γ̃^μ` as an element of the twisted matrix algebra.
pub fn gamma(mu: usize) -> MatPoly {
    MatPoly::from_matrix(&classical_gamma(mu))
}

/// `π̃(γ̃^μ) = π(γ^μ)ρ(r^(−h₂(z^μ)H₁))`.
pub fn twisted_gamma(mu: usize) -> Matrix {
    let h2 = z_bigrade(mu).1;
    let rho = Matrix::diagonal(SPINOR_BIGRADES.iter().map(|e| r_pow(-h2 * e.0)).collect());
    classical_gamma(mu).mul_ref(&rho)
}

fn b_factor(mu: usize, nu: usize) -> Scalar {
    Gauge::Paper.factor(z_bigrade(mu), z_bigrade(nu)).expect("integral").inv().expect("monomial")
}

pub fn gamma_checks() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();

    let w = (1..=4).find_map(|mu| twisted_gamma(mu).diff_witness(&paper_gamma(mu)).map(|w| format!("gamma{mu} {w}")));
    out.push(CheckReport::from_witness("dirac twisted gammas match displayed matrices", None, w));

    let w = (1..=4).find_map(|mu| gamma(mu).bigrade().filter(|g| *g != z_bigrade(mu)).map(|g| format!("gamma{mu} weight {g:?}")));
    out.push(CheckReport::from_witness("dirac gamma weights equal coordinate weights", None, w));

    let mut w = None;
    for mu in 1..=4 {
        for nu in 1..=4 {
            let prod = gamma(mu).star(&gamma(nu)).pi_tilde().as_matrix();
            let rep = twisted_gamma(mu).mul_ref(&twisted_gamma(nu));
            if prod.as_ref() != Some(&rep) {
                w.get_or_insert(format!("({mu},{nu})"));
            }
        }
    }
    out.push(CheckReport::from_witness("dirac pi-tilde is multiplicative on gammas", None, w));

    let mut w = None;
    for mu in 1..=4 {
        for nu in 1..=4 {
            let lhs = gamma(mu).star(&gamma(nu)).scale(&b_factor(mu, nu)).add_ref(&gamma(nu).star(&gamma(mu)).scale(&b_factor(nu, mu)));
            let rhs = MatPoly::identity().scale(&metric(mu, nu).mul_ref(&int(2)));
            if let Some(d) = lhs.sub_ref(&rhs).first_nonzero() {
                w.get_or_insert(format!("({mu},{nu}) {d}"));
            }
            let (gm, gn) = (twisted_gamma(mu), twisted_gamma(nu));
            let lrep = gm.mul_ref(&gn).scale(&b_factor(mu, nu)).add_ref(&gn.mul_ref(&gm).scale(&b_factor(nu, mu)));
            if let Some(d) = lrep.diff_witness(&Matrix::identity(4).scale(&metric(mu, nu).mul_ref(&int(2)))) {
                w.get_or_insert(format!("rep ({mu},{nu}) {d}"));
            }
        }
    }
    out.push(CheckReport::from_witness("dirac clifford relations (16)", None, w));

    let g = |mu| twisted_gamma(mu);
    let id = Matrix::identity(4);
    let table: [(&str, Matrix, Matrix); 6] = [
        ("g1g3+g3g1 = r", g(1).mul_ref(&g(3)).add_ref(&g(3).mul_ref(&g(1))), id.scale(&r_pow(1))),
        ("g2g4+g4g2 = -1/r", g(2).mul_ref(&g(4)).add_ref(&g(4).mul_ref(&g(2))), id.scale(&r_pow(-1).neg_ref())),
        ("g1g2/r = -r g2g1", g(1).mul_ref(&g(2)).scale(&r_pow(-1)), g(2).mul_ref(&g(1)).scale(&r_pow(1).neg_ref())),
        ("r g1g4 = -g4g1/r", g(1).mul_ref(&g(4)).scale(&r_pow(1)), g(4).mul_ref(&g(1)).scale(&r_pow(-1).neg_ref())),
        ("g3g4/r = -r g4g3", g(3).mul_ref(&g(4)).scale(&r_pow(-1)), g(4).mul_ref(&g(3)).scale(&r_pow(1).neg_ref())),
        ("r g3g2 = -g2g3/r", g(3).mul_ref(&g(2)).scale(&r_pow(1)), g(2).mul_ref(&g(3)).scale(&r_pow(-1).neg_ref())),
    ];
    let w = table.iter().find_map(|(n, l, r)| l.diff_witness(r).map(|d| format!("{n}: {d}")));
    out.push(CheckReport::from_witness("dirac displayed clifford table", None, w));

    out.push(exchange_check()?);

    let w = (1..=4).find_map(|mu| {
        (0..4).find_map(|a| {
            let mut e = super::matpoly::SpinorField::zero();
            e.0[a] = NCPolynomial::one();
            MatPoly::scalar(&NCPolynomial::d(mu)).act(&e).first_nonzero().map(|t| format!("d{mu} e{}: {t}", a + 1))
        })
    });
    out.push(CheckReport::from_witness("dirac derivatives annihilate spinor basis", None, w));

    out.extend(trace_checks());
    Ok(out)
}

/// `z̃^μ*γ̃^ν = a(μ,ν)b(ν,μ) γ̃^ν*z̃^μ` and the `p̃`, `∂̃` analogues.
fn exchange_check() -> Result<CheckReport> {
    let (a, b) = exchange_tables(Gauge::Paper)?;
    let mut w = None;
    for mu in 1..=4 {
        for nu in 1..=4 {
            let (i, j) = (mu - 1, nu - 1);
            let zf = a[i][j].mul_ref(&b[j][i]);
            let pf = b[i][j].mul_ref(&a[j][i]);
            let sectors = [("z", NCPolynomial::z(mu), zf), ("p", NCPolynomial::p(mu), pf.clone()), ("d", NCPolynomial::d(mu), pf)];
            for (name, x, f) in sectors {
                let x = MatPoly::scalar(&x);
                let lhs = x.star(&gamma(nu));
                let rhs = gamma(nu).star(&x).scale(&f);
                if let Some(d) = lhs.sub_ref(&rhs).first_nonzero() {
                    w.get_or_insert(format!("{name}{mu} gamma{nu}: {d}"));
                }
            }
        }
    }
    Ok(CheckReport::from_witness("dirac gamma exchange relations (48)", None, w))
}

/// `(p̃,γ̃)_r = r⁻¹γ̃¹*p̃₁ + rγ̃²*p̃₂ + r⁻¹γ̃³*p̃₃ + rγ̃⁴*p̃₄`, gamma first.
pub fn slash(momentum: impl Fn(usize) -> NCPolynomial) -> MatPoly {
    (1..=4).fold(MatPoly::zero(), |acc, mu| {
        let c = r_pow(if mu % 2 == 1 { -1 } else { 1 });
        acc.add_ref(&gamma(mu).star(&MatPoly::scalar(&momentum(mu))).scale(&c))
    })
}

/// The same contraction with momenta first.
pub fn slash_momentum_first(momentum: impl Fn(usize) -> NCPolynomial) -> MatPoly {
    (1..=4).fold(MatPoly::zero(), |acc, mu| {
        let c = r_pow(if mu % 2 == 1 { -1 } else { 1 });
        acc.add_ref(&MatPoly::scalar(&momentum(mu)).star(&gamma(mu)).scale(&c))
    })
}

/// `(p̃,q̃)_r = ½(r⁻¹p̃₁*q̃₃ + r⁻¹p̃₃*q̃₁) − ½(r p̃₂*q̃₄ + r p̃₄*q̃₂)`.
pub fn pq_invariant() -> NCPolynomial {
    let half = Scalar::from_frac(1, 2);
    let t = |a: usize, b: usize, e: i32| NCPolynomial::p(a).star(&NCPolynomial::q(b)).scale(&r_pow(e));
    t(1, 3, -1).add_ref(&t(3, 1, -1)).scale(&half).sub_ref(&t(2, 4, 1).add_ref(&t(4, 2, 1)).scale(&half))
}

/// Constant `c` in `t̃((p̃,γ̃)_r*(q̃,γ̃)_r) = c (p̃,q̃)_r`, found classically from
/// `Σ p_μ q_ν Tr(γ^μγ^ν)` with commuting momenta.
pub fn trace_constant() -> Result<Scalar> {
    let mut lhs = NCPolynomial::zero();
    for mu in 1..=4 {
        for nu in 1..=4 {
            let tr = classical_gamma(mu).mul_ref(&classical_gamma(nu)).trace();
            lhs = lhs.add_ref(&NCPolynomial::p(mu).classical_mul(&NCPolynomial::q(nu)).scale(&tr));
        }
    }
    let rhs = pq_invariant().substitute(&classical_bindings())?;
    let (m, c) = rhs.terms().next().expect("nonzero invariant");
    let k = lhs.coeff(m).div_ref(c)?;
    match lhs.sub_ref(&rhs.scale(&k)).first_term() {
        None => Ok(k),
        Some(t) => Err(crate::error::QtkError::Calibration(format!("classical trace is not proportional to (p,q): {t}"))),
    }
}

fn trace_checks() -> Vec<CheckReport> {
    let mut out = Vec::new();
    let w = (1..=4).find_map(|mu| gamma(mu).twisted_trace().first_term().map(|t| format!("gamma{mu}: {t}")));
    out.push(CheckReport::from_witness("dirac gammas are traceless", None, w));

    let w = match trace_constant() {
        Err(e) => Some(e.to_string()),
        Ok(c) => {
            let lhs = slash(NCPolynomial::p).star(&slash(NCPolynomial::q)).twisted_trace();
            lhs.sub_ref(&pq_invariant().scale(&c)).first_term().map(|t| format!("c = {c}: {t}"))
        }
    };
    let c = trace_constant().map(|c| c.to_string()).unwrap_or_default();
    out.push(CheckReport::from_witness("dirac trace bilinear identity", None, w).with_detail(format!("c = {c}")));

    let w = slash_momentum_first(NCPolynomial::p).sub_ref(&slash(NCPolynomial::p)).first_nonzero();
    out.push(CheckReport::from_witness("dirac slash ordering variants agree", None, w));

    let samples = [NCPolynomial::z(1), NCPolynomial::z(2), NCPolynomial::p(4), NCPolynomial::z(3).classical_mul(&NCPolynomial::p(2))];
    let mut w = None;
    for a in &samples {
        for mu in 1..=4 {
            for x in [gamma(mu), gamma(mu).star(&MatPoly::scalar(&NCPolynomial::z(mu))), MatPoly::scalar(&NCPolynomial::p(mu))] {
                let lhs = MatPoly::scalar(a).star(&x).twisted_trace();
                let rhs = a.star(&x.twisted_trace());
                if let Some(t) = lhs.sub_ref(&rhs).first_term() {
                    w.get_or_insert(format!("{a} with mu={mu}: {t}"));
                }
            }
        }
    }
    out.push(CheckReport::from_witness("dirac trace is a module map", None, w));

    let mut w = None;
    for mu in 1..=4 {
        for nu in 1..=4 {
            let (x, y) = (twisted_gamma(mu), twisted_gamma(nu));
            if x.mul_ref(&y).trace() != y.mul_ref(&x).trace() {
                w.get_or_insert(format!("({mu},{nu})"));
            }
        }
    }
    out.push(CheckReport::from_witness("dirac trace cyclic on gamma images", None, w));

    let central = crate::qmink::invariants_build(Gauge::Paper).map(|i| i.zz);
    let w = match central {
        Err(e) => Some(e.to_string()),
        Ok(c) => (1..=4).find_map(|mu| {
            let x = gamma(mu).star(&MatPoly::scalar(&NCPolynomial::p(mu)));
            let lhs = MatPoly::scalar(&c).star(&x).twisted_trace();
            lhs.sub_ref(&c.star(&x.twisted_trace())).first_term()
        }),
    };
    out.push(CheckReport::from_witness("dirac trace linear over central elements", None, w));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_suite_passes() {
        for r in gamma_checks().unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn trace_constant_is_four() {
        assert_eq!(trace_constant().unwrap(), int(4));
    }

    #[test]
    fn displayed_gamma1_entries() {
        let g = twisted_gamma(1);
        assert_eq!(g.get(1, 3), &int(1));
        assert_eq!(g.get(2, 0), &r_pow(1));
    }
}
