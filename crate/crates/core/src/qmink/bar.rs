use super::poly::{Gauge, Gen, NCPolynomial};
use crate::error::{QtkError, Result};
use crate::report::CheckReport;
use crate::scalars::{r_pow, Scalar};

fn bar_gen(g: Gen) -> Result<Gen> {
    let swap = |mu: usize| match mu {
        2 => 4,
        4 => 2,
        k => k,
    };
    match g {
        Gen::Z(mu) => Ok(Gen::Z(swap(mu))),
        Gen::P(mu) => Ok(Gen::P(swap(mu))),
        Gen::M => Ok(Gen::M),
        other => Err(QtkError::Unsupported(format!("conjugation of {}", other.name()))),
    }
}

/// Antilinear star anti-automorphism with `z̄² = z⁴`, `p̄₂ = p₄`, `r̄ = r`.
pub fn bar(f: &NCPolynomial) -> Result<NCPolynomial> {
    let mut out = NCPolynomial::zero();
    for (mono, c) in f.terms() {
        let gens = mono.generators();
        let mut factor = Scalar::one();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                factor = factor.mul_ref(&Gauge::Paper.factor(gens[i].bigrade(), gens[j].bigrade())?);
            }
        }
        let mut img = NCPolynomial::one();
        for &g in gens.iter().rev() {
            img = img.star(&NCPolynomial::gen(bar_gen(g)?));
        }
        out = out.add_ref(&img.scale(&c.conjugate().div_ref(&factor.conjugate())?));
    }
    Ok(out)
}

fn gens() -> Vec<Gen> {
    (1..=4).map(Gen::Z).chain((1..=4).map(Gen::P)).collect()
}

pub fn bar_checks() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let gs = gens();

    let mut w = None;
    for &g in &gs {
        for &h in &gs {
            let (a, b) = (NCPolynomial::gen(g), NCPolynomial::gen(h));
            let lhs = bar(&a.star(&b))?;
            let rhs = bar(&b)?.star(&bar(&a)?);
            if let Some(t) = lhs.sub_ref(&rhs).first_term() {
                w = Some(format!("{}*{}: {t}", g.name(), h.name()));
                break;
            }
        }
        if w.is_some() {
            break;
        }
    }
    out.push(CheckReport::from_witness("bar reverses star products of generator pairs", None, w));

    let mut w = None;
    for &g in &gs {
        for &h in &gs {
            let f = NCPolynomial::gen(g).star(&NCPolynomial::gen(h)).scale(&Scalar::i());
            if let Some(t) = bar(&bar(&f)?)?.sub_ref(&f).first_term() {
                w.get_or_insert(format!("{}*{}: {t}", g.name(), h.name()));
            }
        }
    }
    out.push(CheckReport::from_witness("bar is an involution", None, w));

    let lhs = bar(&NCPolynomial::z(1).star(&NCPolynomial::z(2)))?;
    let rhs = NCPolynomial::z(4).star(&NCPolynomial::z(1));
    let expect = NCPolynomial::z(1).classical_mul(&NCPolynomial::z(4)).scale(&r_pow(1));
    let w = lhs.sub_ref(&rhs).first_term().or_else(|| rhs.sub_ref(&expect).first_term());
    out.push(CheckReport::from_witness("bar (z1*z2) = z4*z1 = r z1 z4", None, w));

    let inv = super::relations::invariants_build(Gauge::Paper)?;
    for (name, f) in [("zz", &inv.zz), ("pp", &inv.pp), ("pz", &inv.pz)] {
        out.push(CheckReport::from_witness(format!("bar fixes invariant {name}"), None, bar(f)?.sub_ref(f).first_term()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_suite_passes() {
        for r in bar_checks().unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn antilinear() {
        let f = NCPolynomial::z(2).scale(&Scalar::i());
        assert_eq!(bar(&f).unwrap(), NCPolynomial::z(4).scale(&Scalar::i().neg_ref()));
        assert!(bar(&NCPolynomial::d(1)).is_err());
    }
}
