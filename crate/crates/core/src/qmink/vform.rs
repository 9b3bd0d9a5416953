use super::poly::NCPolynomial;
use crate::report::CheckReport;
use crate::scalars::{classical_bindings, r_pow, Scalar};

/// Square matrix of polynomials with star-product multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    n: usize,
    data: Vec<NCPolynomial>,
}

impl PolyMat {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> NCPolynomial) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        PolyMat { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPolynomial {
        &self.data[i * self.n + j]
    }

    pub fn star(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |i, k| {
            (0..self.n).fold(NCPolynomial::zero(), |acc, j| acc.add_ref(&self.get(i, j).star(o.get(j, k))))
        })
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).sub_ref(o.get(i, j)))
    }

    /// `diag(l) · self · diag(r)`
    pub fn diag_sandwich(&self, l: &[Scalar], r: &[Scalar]) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).scale(&l[i].mul_ref(&r[j])))
    }

    /// `M ⊗ I` for a 2×2 `M`.
    pub fn leg1(m: &PolyMat) -> Self {
        Self::from_fn(4, |i, j| if i % 2 == j % 2 { m.get(i / 2, j / 2).clone() } else { NCPolynomial::zero() })
    }

    /// `I ⊗ M` for a 2×2 `M`.
    pub fn leg2(m: &PolyMat) -> Self {
        Self::from_fn(4, |i, j| if i / 2 == j / 2 { m.get(i % 2, j % 2).clone() } else { NCPolynomial::zero() })
    }

    pub fn first_nonzero(&self) -> Option<String> {
        (0..self.n * self.n).find_map(|k| self.data[k].first_term().map(|t| format!("[{},{}]: {}", k / self.n, k % self.n, t)))
    }

    /// Entries as scalars, if every entry is constant.
    pub fn as_scalars(&self) -> Option<Vec<Vec<Scalar>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let e = self.get(i, j);
                        match e.len() {
                            0 => Some(Scalar::zero()),
                            1 => e.terms().next().filter(|(m, _)| **m == super::poly::Mono::ONE).map(|(_, c)| c.clone()),
                            _ => None,
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// `Z = [[z¹,z⁴],[z²,z³]]`
pub fn z_matrix() -> PolyMat {
    let idx = [[1, 4], [2, 3]];
    PolyMat::from_fn(2, |i, j| NCPolynomial::z(idx[i][j]))
}

/// `P = [[p₁,p₂],[p₄,p₃]]`
pub fn p_matrix() -> PolyMat {
    let idx = [[1, 2], [4, 3]];
    PolyMat::from_fn(2, |i, j| NCPolynomial::p(idx[i][j]))
}

/// `D = [[∂₁,∂₂],[∂₄,∂₃]]`
pub fn d_matrix() -> PolyMat {
    let idx = [[1, 2], [4, 3]];
    PolyMat::from_fn(2, |i, j| NCPolynomial::d(idx[i][j]))
}

/// Diagonal of `V = r^(σ³⊗σ³)`.
pub fn v_diag(power: i32) -> Vec<Scalar> {
    [1, -1, -1, 1].iter().map(|&e| r_pow(power * e)).collect()
}

fn ones() -> Vec<Scalar> {
    vec![Scalar::one(); 4]
}

/// The matrix displayed for `D̃₁Z̃₂ − VZ̃₂D̃₁V⁻¹`.
pub fn paper_dz_matrix() -> Vec<Vec<Scalar>> {
    let z = Scalar::zero;
    vec![
        vec![r_pow(1), z(), z(), z()],
        vec![z(), z(), r_pow(-1), z()],
        vec![z(), r_pow(1), z(), z()],
        vec![z(), z(), z(), r_pow(-1)],
    ]
}

/// Permutation operator on `C²⊗C²`.
pub fn permutation_operator() -> Vec<Vec<Scalar>> {
    let m = |i: usize, j: usize| if [(0, 0), (1, 2), (2, 1), (3, 3)].contains(&(i, j)) { Scalar::one() } else { Scalar::zero() };
    (0..4).map(|i| (0..4).map(|j| m(i, j)).collect()).collect()
}

fn render(m: &[Vec<Scalar>]) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn transpose(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    (0..m.len()).map(|i| (0..m.len()).map(|j| m[j][i].clone()).collect()).collect()
}

/// Derived `D̃₁Z̃₂ − VZ̃₂D̃₁V⁻¹`.
pub fn dz_matrix() -> PolyMat {
    let (z2, d1) = (PolyMat::leg2(&z_matrix()), PolyMat::leg1(&d_matrix()));
    d1.star(&z2).sub_ref(&z2.star(&d1).diag_sandwich(&v_diag(1), &v_diag(-1)))
}

pub fn v_form_checks() -> Vec<CheckReport> {
    let (z, p, d) = (z_matrix(), p_matrix(), d_matrix());
    let (z1, z2) = (PolyMat::leg1(&z), PolyMat::leg2(&z));
    let (p1, p2) = (PolyMat::leg1(&p), PolyMat::leg2(&p));
    let (d1, d2) = (PolyMat::leg1(&d), PolyMat::leg2(&d));
    let v = v_diag(1);
    let vi = v_diag(-1);
    let one = ones();
    let check = |name: &str, lhs: PolyMat, rhs: PolyMat| CheckReport::from_witness(name, None, lhs.sub_ref(&rhs).first_nonzero());
    let mut out = vec![
        check("vform Z1 V Z2 = Z2 V Z1", z1.diag_sandwich(&one, &v).star(&z2), z2.diag_sandwich(&one, &v).star(&z1)),
        check("vform D1 V^-1 D2 = D2 V^-1 D1", d1.diag_sandwich(&one, &vi).star(&d2), d2.diag_sandwich(&one, &vi).star(&d1)),
        check("vform P1 V^-1 P2 = P2 V^-1 P1", p1.diag_sandwich(&one, &vi).star(&p2), p2.diag_sandwich(&one, &vi).star(&p1)),
        check("vform P1 Z2 = V Z2 P1 V^-1", p1.star(&z2), z2.star(&p1).diag_sandwich(&v, &vi)),
        check("vform D1 V^-1 P2 = P2 D1", d1.diag_sandwich(&one, &vi).star(&p2), p2.star(&d1))
            .with_detail("displayed form; the star exchange of d and p mirrors p-p")
            .as_discrepancy(),
        check("vform D1 V^-1 P2 = P2 V^-1 D1", d1.diag_sandwich(&one, &vi).star(&p2), p2.diag_sandwich(&one, &vi).star(&d1)),
    ];
    let dz = dz_matrix();
    let paper = paper_dz_matrix();
    let rep = match dz.as_scalars() {
        None => CheckReport::fail("vform D1 Z2 - V Z2 D1 V^-1 matches display", None, format!("non-scalar entry {}", dz.first_nonzero().unwrap_or_default())),
        Some(ours) => {
            let detail = format!("derived {} ; displayed {}", render(&ours), render(&paper));
            if ours == paper {
                CheckReport::pass("vform D1 Z2 - V Z2 D1 V^-1 matches display", None).with_detail(detail)
            } else if ours == transpose(&paper) {
                CheckReport::fail("vform D1 Z2 - V Z2 D1 V^-1 matches display", None, "agrees only after transposition").with_detail(detail)
            } else {
                CheckReport::fail("vform D1 Z2 - V Z2 D1 V^-1 matches display", None, "layouts differ").with_detail(detail)
            }
        }
    };
    out.push(rep.as_discrepancy());
    let at_one = dz.as_scalars().and_then(|m| {
        m.iter().map(|row| row.iter().map(|x| x.substitute(&classical_bindings()).ok()).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()
    });
    out.push(match at_one {
        Some(m) if m == permutation_operator() => CheckReport::pass("vform D1 Z2 - V Z2 D1 V^-1 at r=1 is P", None),
        Some(m) => CheckReport::fail("vform D1 Z2 - V Z2 D1 V^-1 at r=1 is P", None, render(&m)),
        None => CheckReport::fail("vform D1 Z2 - V Z2 D1 V^-1 at r=1 is P", None, "non-scalar entries"),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_form_identities() {
        let reps = v_form_checks();
        assert!(reps.iter().all(|r| !r.failed()), "{reps:?}");
        let disc: Vec<&str> = reps.iter().filter(|r| !r.passed()).map(|r| r.check.as_str()).collect();
        assert_eq!(disc, ["vform D1 V^-1 P2 = P2 D1", "vform D1 Z2 - V Z2 D1 V^-1 matches display"]);
    }

    #[test]
    fn dz_entries_by_hand() {
        // [3,3]: d3*z3 - z3*d3 = r(z3 d3 + 1) - r z3 d3
        let m = dz_matrix().as_scalars().unwrap();
        assert_eq!(m[3][3], r_pow(1));
        assert_eq!(m[0][0], r_pow(1));
        assert_eq!(m[1][2], r_pow(-1));
        assert_eq!(m[2][1], r_pow(-1));
    }
}
