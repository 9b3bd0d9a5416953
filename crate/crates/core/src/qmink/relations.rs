use serde::{Deserialize, Serialize};

use super::poly::{z_bigrade, Gauge, Gen, NCPolynomial};
use crate::error::Result;
use crate::report::CheckReport;
use crate::scalars::{classical_bindings, int, r_pow, Scalar};

pub type Table = [[Scalar; 4]; 4];

/// `a(μ,ν) = r^(−h₂(z^μ)h₁(z^ν))` in the paper gauge; `b` is its entrywise inverse.
pub fn exchange_tables(gauge: Gauge) -> Result<(Table, Table)> {
    let mut a: Table = Default::default();
    let mut b: Table = Default::default();
    for mu in 1..=4 {
        for nu in 1..=4 {
            let e = gauge.exponent(z_bigrade(mu), z_bigrade(nu))?;
            a[mu - 1][nu - 1] = r_pow(e);
            b[mu - 1][nu - 1] = r_pow(-e);
        }
    }
    Ok((a, b))
}

fn table_from_exponents(e: [[i32; 4]; 4]) -> Table {
    let mut t: Table = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = r_pow(e[i][j]);
        }
    }
    t
}

/// The `a` matrix as printed (first index labels rows).
pub fn paper_a_table() -> Table {
    table_from_exponents([[-1, 1, 1, -1], [-1, 1, 1, -1], [1, -1, -1, 1], [1, -1, -1, 1]])
}

pub fn paper_b_table() -> Table {
    table_from_exponents([[1, -1, -1, 1], [1, -1, -1, 1], [-1, 1, 1, -1], [-1, 1, 1, -1]])
}

/// Fixture tables used for the cross-check; replaceable for negative controls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFixtures {
    pub a: Table,
    pub b: Table,
}

impl Default for TableFixtures {
    fn default() -> Self {
        TableFixtures { a: paper_a_table(), b: paper_b_table() }
    }
}

/// String form for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableStrings {
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
}

pub fn table_strings(t: &Table) -> Vec<Vec<String>> {
    t.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
}

fn table_diff(name: &str, ours: &Table, theirs: &Table) -> Option<String> {
    for i in 0..4 {
        for j in 0..4 {
            if ours[i][j] != theirs[i][j] {
                return Some(format!("{name}({},{}): computed {} vs fixture {}", i + 1, j + 1, ours[i][j], theirs[i][j]));
            }
        }
    }
    None
}

/// Bigrade-rule tables against the fixture tables (paper gauge).
pub fn tables_check(fixtures: &TableFixtures) -> CheckReport {
    let (a, b) = exchange_tables(Gauge::Paper).expect("paper gauge");
    let w = table_diff("a", &a, &fixtures.a).or_else(|| table_diff("b", &b, &fixtures.b));
    let mut rep = CheckReport::from_witness("exchange_tables_match_fixtures", None, w);
    if !rep.passed() {
        rep = rep.with_detail("convention fault: bigrade rule disagrees with the fixture tables");
    }
    rep
}

fn zs(mu: usize) -> NCPolynomial {
    NCPolynomial::z(mu)
}

/// `x^μ * y^ν − c(μ,ν) y^ν * x^μ − inhom(μ,ν)` over all 16 pairs.
fn sweep(
    name: &str,
    x: impl Fn(usize) -> NCPolynomial,
    y: impl Fn(usize) -> NCPolynomial,
    c: impl Fn(usize, usize) -> Scalar,
    inhom: impl Fn(usize, usize) -> Scalar,
) -> CheckReport {
    for mu in 1..=4 {
        for nu in 1..=4 {
            let lhs = x(mu).star(&y(nu));
            let rhs = y(nu).star(&x(mu)).scale(&c(mu, nu)).add_ref(&NCPolynomial::constant(inhom(mu, nu)));
            if let Some(w) = lhs.sub_ref(&rhs).first_term() {
                return CheckReport::fail(name, None, format!("({mu},{nu}): {w}"));
            }
        }
    }
    CheckReport::pass(name, None)
}

/// Defining products and quasi-commutation factors in every sector.
pub fn quasi_commutation_checks() -> Vec<CheckReport> {
    let (a, b) = exchange_tables(Gauge::Paper).expect("paper gauge");
    let ab = |m: usize, n: usize| a[m - 1][n - 1].mul_ref(&b[n - 1][m - 1]);
    let ba = |m: usize, n: usize| b[m - 1][n - 1].mul_ref(&a[n - 1][m - 1]);
    let zero = |_: usize, _: usize| Scalar::zero();
    let mut out = Vec::new();
    let defining = |name: &str, x: fn(usize) -> NCPolynomial, y: fn(usize) -> NCPolynomial, t: &Table| {
        for mu in 1..=4 {
            for nu in 1..=4 {
                let lhs = x(mu).star(&y(nu));
                let rhs = x(mu).classical_mul(&y(nu)).scale(&t[mu - 1][nu - 1]);
                if let Some(w) = lhs.sub_ref(&rhs).first_term() {
                    return CheckReport::fail(name, None, format!("({mu},{nu}): {w}"));
                }
            }
        }
        CheckReport::pass(name, None)
    };
    out.push(defining("product_zz_is_a", zs, zs, &a));
    out.push(defining("product_pp_is_a", NCPolynomial::p, NCPolynomial::p, &a));
    out.push(defining("product_zp_is_b", zs, NCPolynomial::p, &b));
    out.push(defining("product_pz_is_b", NCPolynomial::p, zs, &b));
    out.push(sweep("exchange_zz", zs, zs, ab, zero));
    out.push(sweep("exchange_pp", NCPolynomial::p, NCPolynomial::p, ab, zero));
    out.push(sweep("exchange_pz", NCPolynomial::p, zs, ba, zero));
    out.push(sweep("exchange_dd", NCPolynomial::d, NCPolynomial::d, ab, zero));
    out.push(sweep("exchange_dp", NCPolynomial::d, NCPolynomial::p, ab, zero));
    out.push(
        sweep("exchange_dz_with_delta", NCPolynomial::d, zs, ba, |m, n| if m == n { b[m - 1][n - 1].clone() } else { Scalar::zero() })
            .with_detail("inhomogeneous term taken as b(μ,ν)δ_μ^ν"),
    );
    out
}

/// The six explicit coordinate relations, as printed.
pub fn six_relations() -> Vec<(String, NCPolynomial, NCPolynomial)> {
    let rel = |i: usize, j: usize, k: i32| {
        (
            format!("z{i}*z{j} = {}z{j}*z{i}", if k == 0 { String::new() } else { "r^2 ".into() }),
            zs(i).star(&zs(j)),
            zs(j).star(&zs(i)).scale(&r_pow(k)),
        )
    };
    vec![rel(1, 2, 2), rel(1, 3, 0), rel(4, 1, 2), rel(2, 3, 2), rel(2, 4, 0), rel(3, 4, 2)]
}

pub fn six_relations_check() -> Vec<CheckReport> {
    six_relations()
        .into_iter()
        .map(|(name, l, r)| CheckReport::from_witness(format!("relation {name}"), None, l.sub_ref(&r).first_term()))
        .collect()
}

/// The three deformed invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub zz: NCPolynomial,
    pub pp: NCPolynomial,
    pub pz: NCPolynomial,
}

/// Classical `(z,z) = z¹z³ − z²z⁴`, `(p,p) = p₁p₃ − p₂p₄`, `(p,z) = Σ p_μ z^μ`.
pub fn classical_invariants() -> Invariants {
    let c = |x: NCPolynomial, y: NCPolynomial| x.classical_mul(&y);
    Invariants {
        zz: c(zs(1), zs(3)).sub_ref(&c(zs(2), zs(4))),
        pp: c(NCPolynomial::p(1), NCPolynomial::p(3)).sub_ref(&c(NCPolynomial::p(2), NCPolynomial::p(4))),
        pz: (1..=4).fold(NCPolynomial::zero(), |acc, mu| acc.add_ref(&c(NCPolynomial::p(mu), zs(mu)))),
    }
}

/// Star-product expressions of the invariants in the given gauge.
///
/// Paper gauge: `r⁻¹z̃¹*z̃³ − r z̃²*z̃⁴` and analogues. Symmetric gauge: no `r`.
pub fn invariants_build(gauge: Gauge) -> Result<Invariants> {
    let (c13, c24, cp) = match gauge {
        Gauge::Paper => (r_pow(-1), r_pow(1), [r_pow(-1), r_pow(1), r_pow(-1), r_pow(1)]),
        Gauge::SymmetricFootnote => (int(1), int(1), [int(1), int(1), int(1), int(1)]),
    };
    let st = |x: NCPolynomial, y: NCPolynomial| x.star_in(&y, gauge);
    let zz = st(zs(1), zs(3))?.scale(&c13).sub_ref(&st(zs(2), zs(4))?.scale(&c24));
    let pp = st(NCPolynomial::p(1), NCPolynomial::p(3))?.scale(&c13).sub_ref(&st(NCPolynomial::p(2), NCPolynomial::p(4))?.scale(&c24));
    let mut pz = NCPolynomial::zero();
    for mu in 1..=4 {
        pz = pz.add_ref(&st(NCPolynomial::p(mu), zs(mu))?.scale(&cp[mu - 1]));
    }
    Ok(Invariants { zz, pp, pz })
}

pub fn invariants_check(gauge: Gauge) -> Result<Vec<CheckReport>> {
    let inv = invariants_build(gauge)?;
    let cl = classical_invariants();
    let g = gauge.name();
    let b = classical_bindings();
    let mut out = Vec::new();
    for (name, x, y) in [("zz", &inv.zz, &cl.zz), ("pp", &inv.pp, &cl.pp), ("pz", &inv.pz, &cl.pz)] {
        out.push(CheckReport::from_witness(format!("invariant_{name}_equals_classical[{g}]"), None, x.sub_ref(y).first_term()));
        let at_one = x.substitute(&b)?;
        out.push(CheckReport::from_witness(format!("invariant_{name}_classical_limit[{g}]"), None, at_one.sub_ref(y).first_term()));
    }
    Ok(out)
}

/// Star commutators with every `z^μ` and `p_μ`; the witness names the first
/// generator that fails to commute.
pub fn centrality_check(label: &str, f: &NCPolynomial) -> CheckReport {
    let gens = (1..=4).map(Gen::Z).chain((1..=4).map(Gen::P));
    for g in gens {
        let c = f.star_commutator(&NCPolynomial::gen(g));
        if let Some(w) = c.first_term() {
            return CheckReport::fail(format!("central[{label}]"), None, format!("{}: {}", g.name(), w));
        }
    }
    CheckReport::pass(format!("central[{label}]"), None)
}

pub fn centrality_checks() -> Vec<CheckReport> {
    let inv = invariants_build(Gauge::Paper).expect("paper gauge");
    vec![
        centrality_check("z1*z3", &zs(1).star(&zs(3))),
        centrality_check("z2*z4", &zs(2).star(&zs(4))),
        centrality_check("(z,z)_r", &inv.zz),
        centrality_check("(p,p)_r", &inv.pp),
        centrality_check("(p,z)_r", &inv.pz),
    ]
}

/// Quantum derivatives `δ = (r⁻¹∂̃₁, r∂̃₂, r⁻¹∂̃₃, r∂̃₄)`.
pub fn delta_basis() -> [NCPolynomial; 4] {
    let c = [r_pow(-1), r_pow(1), r_pow(-1), r_pow(1)];
    [1, 2, 3, 4].map(|mu| NCPolynomial::d(mu).scale(&c[mu - 1]))
}

pub fn delta_basis_checks() -> Vec<CheckReport> {
    let d = delta_basis();
    let mut out = Vec::new();
    let lhs = d[0].star(&d[2]).scale(&r_pow(1)).sub_ref(&d[1].star(&d[3]).scale(&r_pow(-1)));
    let dd = |a: usize, b: usize| NCPolynomial::d(a).star(&NCPolynomial::d(b));
    let rhs = dd(1, 3).scale(&r_pow(-1)).sub_ref(&dd(2, 4).scale(&r_pow(1)));
    out.push(CheckReport::from_witness("delta_invariant_identity", None, lhs.sub_ref(&rhs).first_term()));
    let mut w = None;
    for mu in 1..=4 {
        for nu in 1..=4 {
            let inhom = d[mu - 1].star(&zs(nu)).filter(|m| !m.has_derivative() && m.z_degree() == 0);
            let expect = if mu == nu { NCPolynomial::one() } else { NCPolynomial::zero() };
            if w.is_none() {
                w = inhom.sub_ref(&expect).first_term().map(|t| format!("({mu},{nu}): {t}"));
            }
        }
    }
    out.push(CheckReport::from_witness("delta_coordinate_pairing_is_r_free", None, w));
    let b = classical_bindings();
    let w = (1..=4).find_map(|mu| d[mu - 1].substitute(&b).ok()?.sub_ref(&NCPolynomial::d(mu)).first_term());
    out.push(CheckReport::from_witness("delta_classical_limit", None, w));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_paper() {
        let (a, b) = exchange_tables(Gauge::Paper).unwrap();
        assert_eq!(a, paper_a_table());
        assert_eq!(b, paper_b_table());
        assert_eq!(a[0][1], r_pow(1));
        assert_eq!(a[2][0], r_pow(1));
        assert_eq!(b[0][0], r_pow(1));
        assert!(tables_check(&TableFixtures::default()).passed());
        let mut bad = TableFixtures::default();
        bad.a[0][0] = r_pow(1);
        assert!(!tables_check(&bad).passed());
    }

    #[test]
    fn relations_and_sectors() {
        for rep in six_relations_check().into_iter().chain(quasi_commutation_checks()) {
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn invariants_in_both_gauges() {
        for g in [Gauge::Paper, Gauge::SymmetricFootnote] {
            for rep in invariants_check(g).unwrap() {
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }

    #[test]
    fn centrality() {
        for rep in centrality_checks() {
            assert!(rep.passed(), "{rep:?}");
        }
        let rep = centrality_check("z1", &zs(1));
        assert!(!rep.passed());
        assert!(rep.witness.unwrap().starts_with("z2"));
    }

    #[test]
    fn delta_basis_properties() {
        for rep in delta_basis_checks() {
            assert!(rep.passed(), "{rep:?}");
        }
    }
}
