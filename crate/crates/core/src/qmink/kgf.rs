use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{p_bigrade, Gauge, Mono, NCPolynomial};
use crate::report::CheckReport;
use crate::scalars::{frac, Scalar};

/// Inverse metric read off `(z,z) = z¹z³ − z²z⁴`.
pub fn metric(mu: usize, nu: usize) -> Scalar {
    match (mu, nu) {
        (1, 3) | (3, 1) => frac(1, 2),
        (2, 4) | (4, 2) => frac(-1, 2),
        _ => Scalar::zero(),
    }
}

/// `g̃^{μν} = g^{μν}` times the inverse twist factor on `∂_μ ⊗ ∂_ν`.
pub fn twisted_metric(mu: usize, nu: usize) -> Scalar {
    let f = Gauge::Paper.factor(p_bigrade(mu), p_bigrade(nu)).expect("integral");
    metric(mu, nu).mul_ref(&f.inv().expect("monomial"))
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (1..=4).flat_map(|m| (1..=4).map(move |n| (m, n))).filter(|&(m, n)| !metric(m, n).is_zero())
}

/// `g^{μν}∂_μ∂_ν` as a classical element.
pub fn dalembertian() -> NCPolynomial {
    pairs().fold(NCPolynomial::zero(), |acc, (m, n)| {
        acc.add_ref(&NCPolynomial::d(m).classical_mul(&NCPolynomial::d(n)).scale(&metric(m, n)))
    })
}

/// `g̃^{μν}∂̃_μ*∂̃_ν`.
pub fn twisted_dalembertian() -> NCPolynomial {
    pairs().fold(NCPolynomial::zero(), |acc, (m, n)| {
        acc.add_ref(&NCPolynomial::d(m).star(&NCPolynomial::d(n)).scale(&twisted_metric(m, n)))
    })
}

/// Action of the twisted D'Alembertian through the module structure,
/// `Σ g̃^{μν} ∂̃_μ ▷ (∂̃_ν ▷ w)`.
pub fn twisted_box_on(w: &NCPolynomial) -> NCPolynomial {
    pairs().fold(NCPolynomial::zero(), |acc, (m, n)| {
        let inner = NCPolynomial::d(n).apply_twisted(w);
        acc.add_ref(&NCPolynomial::d(m).apply_twisted(&inner).scale(&twisted_metric(m, n)))
    })
}

/// All coordinate monomials of total degree `≤ n`.
pub fn z_monomials(n: u16) -> Vec<NCPolynomial> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                for d in 0..=n - a - b - c {
                    out.push(NCPolynomial::term(Mono { z: [a, b, c, d], ..Mono::ONE }, Scalar::one()));
                }
            }
        }
    }
    out
}

/// `(p,z) = p₁z¹ + p₂z² + p₃z³ + p₄z⁴`.
pub fn pairing() -> NCPolynomial {
    (1..=4).fold(NCPolynomial::zero(), |acc, k| acc.add_ref(&NCPolynomial::p(k).classical_mul(&NCPolynomial::z(k))))
}

/// `(p,p) = p₁p₃ − p₂p₄`.
pub fn momentum_square() -> NCPolynomial {
    NCPolynomial::p(1).classical_mul(&NCPolynomial::p(3)).sub_ref(&NCPolynomial::p(2).classical_mul(&NCPolynomial::p(4)))
}

/// Reduce modulo `(p,p) − m²` with the rule `p₂p₄ ↦ p₁p₃ − m²`.
pub fn reduce_mass_shell(f: &NCPolynomial) -> NCPolynomial {
    let rule = NCPolynomial::p(1)
        .classical_mul(&NCPolynomial::p(3))
        .sub_ref(&NCPolynomial::m().classical_mul(&NCPolynomial::m()));
    let mut out = NCPolynomial::zero();
    for (mono, c) in f.terms() {
        let k = mono.p[1].min(mono.p[3]);
        let mut rest = *mono;
        rest.p[1] -= k;
        rest.p[3] -= k;
        let t = NCPolynomial::term(rest, c.clone()).classical_mul(&rule.classical_pow(k as u32));
        out = out.add_ref(&t);
    }
    out
}

/// `Σ_{k≤N} (−i)^k (p,z)^{*k} / k!`.
pub fn truncated_plane_wave(n: u32) -> NCPolynomial {
    truncated_exp_pairing(n, -1)
}

/// `Σ_{k≤N} (±i)^k (p,z)^{*k} / k!` with the sign of `i` given by `sign`.
pub fn truncated_exp_pairing(n: u32, sign: i64) -> NCPolynomial {
    let pz = pairing();
    let mut out = NCPolynomial::zero();
    let mut power = NCPolynomial::one();
    let mut fact = BigInt::from(1);
    let mi = Scalar::i().scale_rat(&BigRational::from_integer(sign.into()));
    for k in 0..=n {
        if k > 0 {
            power = power.star(&pz);
            fact *= k;
        }
        let c = mi.pow(k as i32).expect("nonzero").scale_rat(&BigRational::new(1.into(), fact.clone()));
        out = out.add_ref(&power.scale(&c));
    }
    out
}

/// `(□̃ + m²) f_N` reduced modulo the mass shell.
pub fn kgf_residual(n: u32) -> NCPolynomial {
    let f = truncated_plane_wave(n);
    let m2 = NCPolynomial::m().classical_mul(&NCPolynomial::m());
    reduce_mass_shell(&twisted_box_on(&f).add_ref(&m2.classical_mul(&f)))
}

pub fn kgf_checks(box_degree: u16, n: u32) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let op = twisted_dalembertian().sub_ref(&dalembertian());
    out.push(CheckReport::from_witness("kgf twisted metric contraction equals g d.d", None, op.first_term()));

    let cl = dalembertian();
    let w = z_monomials(box_degree).into_iter().find_map(|m| {
        let d = twisted_box_on(&m).sub_ref(&cl.apply_classical(&m));
        d.first_term().map(|t| format!("on {m}: {t}"))
    });
    out.push(CheckReport::from_witness("kgf twisted dalembertian on monomials", Some(box_degree as usize), w));

    let pz = pairing();
    let w = (0..=n).find_map(|k| pz.star_pow(k).sub_ref(&pz.classical_pow(k)).first_term().map(|t| format!("n={k}: {t}")));
    out.push(CheckReport::from_witness("kgf (p,z)^*n equals (p,z)^n", Some(n as usize), w));

    let res = kgf_residual(n);
    let low = res.filter(|m| m.z_degree() + 1 < n);
    out.push(CheckReport::from_witness("kgf truncated plane wave residual", Some(n as usize), low.first_term()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;
    use proptest::prelude::*;

    #[test]
    fn kgf_suite_passes() {
        for r in kgf_checks(4, 6) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn box_on_pairing_power() {
        // □(p,z)² = 2(p,p)
        let pz2 = pairing().classical_pow(2);
        assert_eq!(twisted_box_on(&pz2), momentum_square().scale(&int(2)));
    }

    #[test]
    fn residual_is_m2_times_top_terms() {
        // (□ + m²) f_N ≡ m²(f_N − f_{N−2})
        let n = 4;
        let m2 = NCPolynomial::m().classical_mul(&NCPolynomial::m());
        let expect = reduce_mass_shell(&m2.classical_mul(&truncated_plane_wave(n).sub_ref(&truncated_plane_wave(n - 2))));
        assert_eq!(kgf_residual(n), expect);
    }

    fn arb_p_poly() -> impl Strategy<Value = NCPolynomial> {
        proptest::collection::vec(([0u16..3, 0..3, 0..3, 0..3], 0u16..2, -3i64..4), 1..5).prop_map(|ts| {
            ts.into_iter().fold(NCPolynomial::zero(), |acc, (p, m, c)| {
                acc.add_ref(&NCPolynomial::term(Mono { p, m, ..Mono::ONE }, int(c)))
            })
        })
    }

    proptest! {
        #[test]
        fn mass_shell_reduction_idempotent(f in arb_p_poly()) {
            let once = reduce_mass_shell(&f);
            prop_assert_eq!(reduce_mass_shell(&once), once.clone());
            prop_assert!(once.terms().all(|(m, _)| m.p[1] == 0 || m.p[3] == 0));
            let count = |g: &NCPolynomial| g.terms().map(|(m, _)| m.p[1].min(m.p[3])).max().unwrap_or(0);
            prop_assert!(count(&once) <= count(&f));
        }

        #[test]
        fn reduction_preserves_class(f in arb_p_poly()) {
            // adding an ideal element does not change the normal form
            let g = f.add_ref(&momentum_square().sub_ref(&NCPolynomial::m().classical_pow(2)).classical_mul(&f));
            prop_assert_eq!(reduce_mass_shell(&g), reduce_mass_shell(&f));
        }
    }
}
