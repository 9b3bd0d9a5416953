//! Finite-dimensional representations, twist matrices and R-matrices.

mod rep;
mod rmatrix;
mod twist;

pub use rep::{
    casimir, diagonal_weights, minkowski_weight_rep, q_bracket_of, q_factorial, q_integer, q_spin_rep, q_tensor, s_power_of,
    spin_rep, AlgRep, H, H1, H2, XM, XM1, XM2, XP, XP1, XP2,
};
pub use rmatrix::{rh_matrix, rq_matrix, RMatrix, RSource};
pub use twist::{
    abelian_cartan, build_twist, cartan_pair, identity_twist, jordanian, jordanian_cartan, lorentz_jordanian, rh_as_twist,
    rq_as_twist, sigma_matrix, Coproduct, Recipe, RepTwist, TwistFamily,
};
