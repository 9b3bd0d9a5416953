//! Exact coefficient arithmetic: Gaussian rationals, Laurent polynomials in
//! the deformation parameters, their fraction field, and `xi`-adic series.
//!
//! `s` is the square root of `q`; `q` is accepted by the parser as `s^2` but
//! never stored. `t` is a formal stand-in for `ln r`, needed only where a twist
//! is written as `r^(A ⊗ B)` with non-diagonal `A`, `B`.

mod gauss;
mod laurent;
mod parse;
mod ratfn;
mod series;

pub use gauss::GaussRat;
pub use laurent::{Exp, LaurentPoly};
pub use parse::parse_scalar;
pub use ratfn::RationalFunction;
pub use series::TruncSeries;

pub const NVARS: usize = 4;

/// Formal parameters of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    R = 0,
    S = 1,
    Xi = 2,
    T = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::R, Var::S, Var::Xi, Var::T];

    pub fn name(self) -> &'static str {
        match self {
            Var::R => "r",
            Var::S => "s",
            Var::Xi => "xi",
            Var::T => "t",
        }
    }

    pub fn from_name(n: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == n)
    }
}

/// Parameter bindings for [`RationalFunction::substitute`] and friends.
pub type Bindings = Vec<(Var, GaussRat)>;

/// Coefficient type of every matrix and polynomial outside the series engine.
pub type Scalar = RationalFunction;

/// Shorthands used throughout the crate.
pub fn r() -> Scalar {
    Scalar::var(Var::R)
}

pub fn r_pow(k: i32) -> Scalar {
    Scalar::var_pow(Var::R, k)
}

pub fn s_pow(k: i32) -> Scalar {
    Scalar::var_pow(Var::S, k)
}

pub fn xi() -> Scalar {
    Scalar::var(Var::Xi)
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

/// Classical-limit bindings `r = s = 1`, `xi = 0`.
pub fn classical_bindings() -> Bindings {
    vec![(Var::R, GaussRat::one()), (Var::S, GaussRat::one()), (Var::Xi, GaussRat::zero())]
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                self.add_ref(o)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                self.sub_ref(o)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                self.mul_ref(o)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                self.add_ref(&o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                self.sub_ref(&o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                self.mul_ref(&o)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}

forward_ops!(GaussRat);
forward_ops!(LaurentPoly);
forward_ops!(RationalFunction);
forward_ops!(TruncSeries);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_ratfn() -> impl Strategy<Value = RationalFunction> {
        let term = (-3i64..4, 1i64..4, -2i32..3, -2i32..3, 0i32..2, any::<bool>());
        (prop::collection::vec(term.clone(), 1..4), prop::collection::vec(term, 0..2)).prop_map(|(n, d)| {
            let mk = |ts: &[(i64, i64, i32, i32, i32, bool)]| {
                LaurentPoly::from_terms(ts.iter().map(|&(a, b, er, es, ex, im)| {
                    let c = GaussRat::from_frac(a, b);
                    let c = if im { c.mul_ref(&GaussRat::i()) } else { c };
                    ([er, es, ex, 0], c)
                }))
            };
            let num = mk(&n);
            let den = LaurentPoly::one().add_ref(&mk(&d).mul_ref(&LaurentPoly::var(Var::S)));
            RationalFunction::new(num, den).unwrap_or_else(|_| RationalFunction::one())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in small_ratfn(), b in small_ratfn(), c in small_ratfn()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn conjugate_is_involutive_homomorphism(a in small_ratfn(), b in small_ratfn()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        }

        #[test]
        fn render_parse_round_trip(a in small_ratfn()) {
            let text = a.to_string();
            let back = parse_scalar(&text).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn normalization_is_idempotent(a in small_ratfn()) {
            let again = RationalFunction::new(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(again.numer(), a.numer());
            prop_assert_eq!(again.denom(), a.denom());
        }

        #[test]
        fn series_matches_truncated_polynomial(cs in prop::collection::vec(-4i64..5, 1..5), ds in prop::collection::vec(-4i64..5, 1..5)) {
            let n = 4;
            let poly = |v: &[i64]| LaurentPoly::from_terms(v.iter().enumerate().map(|(k, &c)| ([0, 0, k as i32, 0], GaussRat::from_int(c))));
            let (p, q) = (poly(&cs), poly(&ds));
            let prod = RationalFunction::from_poly(p.mul_ref(&q));
            let sp = TruncSeries::from_ratfn(&RationalFunction::from_poly(p), n).unwrap();
            let sq = TruncSeries::from_ratfn(&RationalFunction::from_poly(q), n).unwrap();
            prop_assert_eq!(sp.mul_ref(&sq), TruncSeries::from_ratfn(&prod, n).unwrap());
        }
    }

    #[test]
    fn specialization_examples() {
        let b = vec![(Var::R, GaussRat::one())];
        assert!(r().substitute(&b).unwrap().is_one());
        let b2 = vec![(Var::R, GaussRat::from_int(2))];
        assert_eq!(r_pow(2).substitute(&b2).unwrap(), int(4));
    }

    #[test]
    fn conjugate_examples() {
        let ir = Scalar::i().mul_ref(&r());
        assert_eq!(ir.conjugate(), ir.neg_ref());
        assert_eq!(xi().pow(2).unwrap().conjugate(), xi().pow(2).unwrap());
        let z = int(1).add_ref(&Scalar::i().mul_ref(&xi()));
        assert_eq!(z.conjugate(), z);
    }
}
