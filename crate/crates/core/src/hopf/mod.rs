//! Classical U(sl2) in PBW form over `xi`-adic series, and its jordanian twist.

mod jordanian;
mod pbw;

pub use jordanian::{
    cocycle_check_symbolic, cocycle_defect, jordanian_twist, jordanian_twist_double_xi, normalization_holds, sigma_series,
    TwistedHopf,
};
pub use pbw::{mono_product, PbwMonomial, PbwTensor, UElement};
