use std::collections::BTreeSet;

use super::poly::{Mono, NCPolynomial};
use crate::error::{QtkError, Result};
use crate::matrix::Matrix;
use crate::replib::{abelian_cartan, minkowski_weight_rep};
use crate::report::CheckReport;
use crate::scalars::{classical_bindings, Scalar};

fn single_coeff(p: &NCPolynomial) -> Result<(Mono, Scalar)> {
    let mut it = p.terms();
    match (it.next(), it.next()) {
        (Some((m, c)), None) => Ok((*m, c.clone())),
        _ => Err(QtkError::Evaluation(format!("expected a single term, got {p}"))),
    }
}

fn index_tuples(k: u32) -> impl Iterator<Item = Vec<usize>> {
    (0..4usize.pow(k)).map(move |n| (0..k).rev().map(|j| (n / 4usize.pow(j)) % 4 + 1).collect())
}

/// `Ω^k` read off the star product, left-nested, on the coordinate tensor basis.
pub fn omega_from_star(k: u32) -> Result<Matrix> {
    let mut diag = Vec::new();
    for idx in index_tuples(k) {
        let prod = idx.iter().skip(1).fold(NCPolynomial::z(idx[0]), |acc, &mu| acc.star(&NCPolynomial::z(mu)));
        diag.push(single_coeff(&prod)?.1);
    }
    Ok(Matrix::diagonal(diag))
}

/// `Ω²` as the represented twist, and `Ω³` from both association orders.
pub fn omega_from_rep(k: u32) -> Result<Vec<Matrix>> {
    let v = minkowski_weight_rep();
    let phi = abelian_cartan();
    match k {
        2 => Ok(vec![phi.matrix(&v, &v)?]),
        3 => {
            let (l, r) = phi.cocycle_sides(&v, &v, &v)?;
            Ok(vec![l, r])
        }
        _ => Err(QtkError::Unsupported(format!("omega for k = {k}"))),
    }
}

/// Ordered star monomials of degree `k` are single nonzero multiples of distinct classical monomials.
pub fn basis_witness(k: u32) -> Option<String> {
    let mut seen = BTreeSet::new();
    for idx in index_tuples(k).filter(|v| v.windows(2).all(|w| w[0] <= w[1])) {
        let prod = idx.iter().skip(1).fold(NCPolynomial::z(idx[0]), |acc, &mu| acc.star(&NCPolynomial::z(mu)));
        match single_coeff(&prod) {
            Err(e) => return Some(e.to_string()),
            Ok((_, c)) if c.inv().is_err() => return Some(format!("{idx:?}: coefficient {c} not invertible")),
            Ok((m, _)) if !seen.insert(m) => return Some(format!("{idx:?}: repeated image")),
            _ => {}
        }
    }
    None
}

pub fn omega_checks() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for k in [2, 3] {
        let star = omega_from_star(k)?;
        let reps = omega_from_rep(k)?;
        let w = reps.iter().find_map(|m| star.diff_witness(m));
        out.push(CheckReport::from_witness(format!("omega{k} star matches represented twist"), None, w));
        let at_one = star.substitute(&classical_bindings())?;
        out.push(CheckReport::from_witness(format!("omega{k} at r=1 is identity"), None, at_one.diff_witness(&Matrix::identity(star.rows()))));
        out.push(CheckReport::from_witness(format!("omega{k} star monomials form a basis"), None, basis_witness(k)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::r_pow;

    #[test]
    fn omega_suite_passes() {
        for r in omega_checks().unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn omega2_entry_is_a12() {
        // z¹⊗z² sits at 4·0 + 1
        assert_eq!(omega_from_star(2).unwrap().get(1, 1), &r_pow(1));
    }

    #[test]
    fn k4_unsupported() {
        assert!(omega_from_rep(4).is_err());
    }
}
